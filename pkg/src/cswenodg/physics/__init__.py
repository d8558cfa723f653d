"""Flux models, Riemann solver and reference solutions."""
from .exact import (
    burgers2d_exact,
    density_wave,
    dmr_shock_x,
    dmr_states,
    exact_burgers,
    exact_burgers_entropy,
    godunov_buckley_leverett,
    isentropic_vortex,
    normal_shock_state,
)
from .models import (
    BuckleyLeverett,
    Burgers,
    Euler,
    FluxModel,
    buckley_leverett_flux,
    buckley_leverett_speed,
    burgers_flux,
    euler_characteristics,
    euler_flux,
)
from .riemann import StarState, exact_riemann, star_state

__all__ = [
    "BuckleyLeverett",
    "Burgers",
    "Euler",
    "FluxModel",
    "StarState",
    "buckley_leverett_flux",
    "buckley_leverett_speed",
    "burgers2d_exact",
    "burgers_flux",
    "density_wave",
    "dmr_shock_x",
    "dmr_states",
    "euler_characteristics",
    "euler_flux",
    "exact_burgers",
    "exact_burgers_entropy",
    "exact_riemann",
    "godunov_buckley_leverett",
    "isentropic_vortex",
    "normal_shock_state",
    "star_state",
]
