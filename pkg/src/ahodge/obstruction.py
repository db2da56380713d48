"""Obstruction to the existence of a compatible symplectic structure.

On a compact almost-complex manifold, a (1,0)-form that is dbar-closed but
not d-closed rules out any compatible symplectic structure: such a form is
harmonic for the mixed operator dbar + mu under every Hermitian metric but
never harmonic for del + mubar, while the two mixed Laplacians coincide on
almost-Kahler manifolds.  A coframe corollary: some d(phi^j) nonzero with
pure (2,0) + (0,2) type already obstructs, with phi^j as the witness.

The search runs over the computed dbar-closed (1,0) space only (invariant
plus finitely many modes), so a negative search is reported Inconclusive,
never as existence of a symplectic structure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fourier import (
    EXACT,
    ModeForm,
    d_mode,
    dbar_mode,
    harmonic_basis_dbar,
)
from .manifold import ManifoldSpec


@dataclass
class ObstructionVerdict:
    verdict: str  # "Obstructed" | "Inconclusive"
    witness: ModeForm | None = None
    rule: str | None = None  # "theorem" | "coframe_corollary"
    certificate: dict | None = None

    @property
    def obstructed(self) -> bool:
        return self.verdict == "Obstructed"


def _certify(witness: ModeForm, spec: ManifoldSpec) -> dict:
    return {
        "dbar_witness_zero": dbar_mode(witness, spec).is_zero(),
        "d_witness_nonzero": not d_mode(witness, spec).is_zero(),
    }


def coframe_obstruction(spec: ManifoldSpec) -> ObstructionVerdict:
    """Look for a coframe element with nonzero differential of pure
    (2,0) + (0,2) type."""
    for j in range(1, spec.n + 1):
        dphi = spec.dphi[j - 1]
        if dphi.is_zero():
            continue
        if not dphi.component(1, 1).is_zero():
            continue
        witness = ModeForm.invariant(spec.generator(j), spec.fibration.rank)
        cert = _certify(witness, spec)
        if cert["dbar_witness_zero"] and cert["d_witness_nonzero"]:
            return ObstructionVerdict("Obstructed", witness, "coframe_corollary", cert)
    return ObstructionVerdict("Inconclusive")


def symplectic_obstruction(spec: ManifoldSpec, cap: int = 10**6) -> ObstructionVerdict:
    """Search the computed dbar-closed (1,0) basis for a witness with
    nonzero differential; fall back to the coframe criterion."""
    space = harmonic_basis_dbar(1, spec, cap)
    if space.status == EXACT:
        for psi in space.basis:
            if d_mode(psi, spec).is_zero():
                continue
            cert = _certify(psi, spec)
            if cert["dbar_witness_zero"] and cert["d_witness_nonzero"]:
                return ObstructionVerdict("Obstructed", psi, "theorem", cert)
    return coframe_obstruction(spec)
