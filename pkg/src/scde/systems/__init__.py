"""Built-in density-evolution systems."""

from .gldpc import GldpcParams, gldpc_g, gldpc_g_prime, gldpc_potential, gldpc_system
from .cs import (
    CsParams,
    ScalarChannelOracle,
    MmseCurve,
    cs_potential,
    cs_system,
    mmse_bg,
    mutual_info_bg,
)

__all__ = [
    "GldpcParams",
    "gldpc_g",
    "gldpc_g_prime",
    "gldpc_potential",
    "gldpc_system",
    "CsParams",
    "ScalarChannelOracle",
    "MmseCurve",
    "cs_potential",
    "cs_system",
    "mmse_bg",
    "mutual_info_bg",
]
