"""Occupation expectations and the coupling-swap duality check.

For an unnormalized one-excitation eigenstate with atom amplitude 1 at a
dressed level E (resonant real regime, ``omega = omega_b = omega_c``),
the photon and phonon occupations have the closed forms

    <b'b> = ((E - omega_a)(E - omega) - xi^2)     / ((E - eps_1)(E - eps_2))
    <c'c> = ((E - omega_a)(E - omega) - lambda^2) / ((E - eps_1)(E - eps_2))

equal to the squared photon/phonon amplitudes of the assembled
eigenvector.  Swapping ``lambda <-> xi`` leaves the spectrum invariant and
exchanges the two occupations: ``<b'b>`` at (lambda, xi) equals ``<c'c>``
at (xi, lambda), level by level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .darkstates import _require_gamma_nonzero, _resonant_real, duality_swap
from .errors import GammaZero, NotAnEigenvalue, PoleHit
from .model import ModelParams
from .threemode import phi, three_mode_spectrum

__all__ = ["DualityReport", "b_occupation", "c_occupation", "duality_report"]


@dataclass(frozen=True)
class DualityReport:
    """Matched spectra and occupations under the coupling swap.

    ``energies`` holds the ascending dressed levels of the base and the
    swapped parameter set (they agree pairwise); ``b_occ[j]`` is the
    photon occupation of the base set at level j and ``c_occ_swapped[j]``
    the phonon occupation of the swapped set at its matching level.
    """

    energies: tuple[tuple[float, float, float], tuple[float, float, float]]
    b_occ: tuple[float, float, float]
    c_occ_swapped: tuple[float, float, float]
    max_mismatch: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_mismatch <= self.tol


def _occupation(params: ModelParams, energy: float, coupling_sq: float,
                root_tol: float) -> float:
    omega, lam, xi, kappa = _resonant_real(params)
    _require_gamma_nonzero(lam, xi, kappa, exc=GammaZero)
    e = float(energy)
    eps1, eps2 = omega - kappa, omega + kappa
    if min(abs(e - eps1), abs(e - eps2)) <= 1e-10:
        raise PoleHit(f"energy {e} sits on a quasimode energy ({eps1}, {eps2})")
    residual = abs(phi(params, e))
    bound = root_tol * max(1.0, abs(e) ** 3)
    if residual > bound:
        raise NotAnEigenvalue(
            f"cubic residual {residual:.3e} at {e} exceeds {bound:.1e}"
        )
    return ((e - params.omega_a) * (e - omega) - coupling_sq) / ((e - eps1) * (e - eps2))


def b_occupation(params: ModelParams, energy: float, *, root_tol: float = 1e-10,
                 normalized: bool = False) -> float:
    """Photon occupation of the atom-amplitude-1 eigenstate at ``energy``.

    ``normalized=True`` divides by the squared norm
    ``1 + <b'b> + <c'c>``, i.e. reports the occupation of the normalized
    state instead of the unnormalized closed form.
    """
    value = _occupation(params, energy, params.xi.real ** 2, root_tol)
    if normalized:
        other = _occupation(params, energy, params.lam.real ** 2, root_tol)
        value /= 1.0 + value + other
    return value


def c_occupation(params: ModelParams, energy: float, *, root_tol: float = 1e-10,
                 normalized: bool = False) -> float:
    """Phonon occupation; mirror of :func:`b_occupation`."""
    value = _occupation(params, energy, params.lam.real ** 2, root_tol)
    if normalized:
        other = _occupation(params, energy, params.xi.real ** 2, root_tol)
        value /= 1.0 + value + other
    return value


def duality_report(params: ModelParams, tol: float = 1e-10) -> DualityReport:
    """Verify the occupation duality level by level.

    Computes the dressed levels of the base and the coupling-swapped
    parameter sets, checks that they match pairwise, and compares the
    photon occupation of the base set with the phonon occupation of the
    swapped set at every level.
    """
    omega, lam, xi, kappa = _resonant_real(params)
    _require_gamma_nonzero(lam, xi, kappa)
    swapped = duality_swap(params)
    base_levels = three_mode_spectrum(params).e
    swapped_levels = three_mode_spectrum(swapped).e
    for a, b in zip(base_levels, swapped_levels):
        if abs(a - b) > 1e-12 * max(1.0, abs(a)):
            raise RuntimeError(
                f"swapped spectra failed to match: {base_levels} vs {swapped_levels}"
            )
    b_occ = tuple(b_occupation(params, e) for e in base_levels)
    c_occ = tuple(c_occupation(swapped, e) for e in swapped_levels)
    mismatch = max(abs(b - c) for b, c in zip(b_occ, c_occ))
    return DualityReport(
        energies=(base_levels, swapped_levels),
        b_occ=b_occ,
        c_occ_swapped=c_occ,
        max_mismatch=mismatch,
        tol=tol,
    )
