"""Noether invariants (flux and torque) of CMC surfaces in E3(kappa, tau) and Sol3."""

__version__ = "0.1.0"
