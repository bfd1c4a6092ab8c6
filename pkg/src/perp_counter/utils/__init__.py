"""Utility modules for perp counter."""

from .numeric import Threshold, acosh_stable, ball_volume, decay_slope, gamma_half, sphere_volume

__all__ = ["Threshold", "acosh_stable", "ball_volume", "decay_slope", "gamma_half", "sphere_volume"]
