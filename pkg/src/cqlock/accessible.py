"""Maximization of measured mutual information over POVMs.

The optimizer first evaluates a set of candidate projective bases
(computational, MUB partners when supplied, eigenbasis of the B marginal),
then runs seeded random-restart hill climbing over rank-1 POVMs with up to
d^2 outcomes. The returned value is a certified lower bound on the
accessible information, capped above by the Holevo quantity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qmath import shannon_entropy, von_neumann_entropy
from .states import CQEnsemble
from .measurement import Povm, projective_povm

__all__ = [
    "OptimizerConfig",
    "AccessibleInfoResult",
    "GuardError",
    "holevo_chi",
    "accessible_information",
    "optimize_povm",
]

MAX_DIM_B = 16


class GuardError(ValueError):
    """Instance exceeds the desk-scale dimension guard."""


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 50
    max_iters: int = 200
    step_init: float = 0.5
    step_min: float = 1e-3
    outcome_budget: int | None = None  # defaults to d^2
    candidate_bases: tuple = ("computational", "mub_partner", "marginal_eigenbasis")
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("need at least one restart")
        if self.max_iters < 1:
            raise ValueError("need at least one iteration")

    def budget_for(self, d: int) -> int:
        b = d * d if self.outcome_budget is None else self.outcome_budget
        if not d <= b <= d * d:
            raise ValueError("outcome budget must lie between d and d^2")
        return b


@dataclass(frozen=True)
class AccessibleInfoResult:
    value: float
    best_povm: Povm
    upper_bound: float
    per_restart_values: tuple
    converged: bool


def holevo_chi(ens: CQEnsemble) -> float:
    """S(sum p_a sigma^(a)) - sum p_a S(sigma^(a)), in bits."""
    avg = von_neumann_entropy(ens.average_state())
    return avg - float(sum(p * von_neumann_entropy(s) for p, s in zip(ens.probs, ens.states)))


def _mi_of_table(table: np.ndarray) -> float:
    return (
        shannon_entropy(table.sum(axis=1))
        + shannon_entropy(table.sum(axis=0))
        - shannon_entropy(table)
    )


def _objective_vectors(sig: np.ndarray, probs: np.ndarray, w: np.ndarray) -> float:
    """Measured MI for the rank-1 POVM with measurement vectors in the columns of w."""
    sw = np.einsum("aij,jb->aib", sig, w)
    table = np.einsum("ib,aib->ab", w.conj(), sw).real
    table = np.clip(table, 0.0, None) * probs[:, None]
    return _mi_of_table(table / table.sum())


def _vectors_from_unitary(v: np.ndarray, d: int) -> np.ndarray:
    # first d rows of an n x n unitary: n sub-normalized vectors resolving I_d
    return v[:d, :]


def _qr_unitary(m: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(m)
    # fix the phase convention so the map is deterministic
    return q * np.sign(np.where(np.abs(np.diag(r)) > 0, np.diag(r), 1.0))


def _random_unitary(n: int, rng) -> np.ndarray:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return _qr_unitary(g)


def _povm_from_vectors(w: np.ndarray) -> Povm:
    return Povm(tuple(np.outer(w[:, b], w[:, b].conj()) for b in range(w.shape[1])))


def _candidate_unitaries(ens: CQEnsemble, cfg: OptimizerConfig, extra):
    d = ens.dim_b
    cands = []
    if "computational" in cfg.candidate_bases:
        cands.append(np.eye(d, dtype=complex))
    if "marginal_eigenbasis" in cfg.candidate_bases:
        _, vecs = np.linalg.eigh(ens.average_state())
        cands.append(vecs)
    if "mub_partner" in cfg.candidate_bases:
        cands.extend(np.asarray(u, dtype=complex) for u in extra)
    return cands


def _hill_climb(sig, probs, cfg: OptimizerConfig, d: int, n: int, rng) -> tuple[float, np.ndarray]:
    v = _random_unitary(n, rng)
    val = _objective_vectors(sig, probs, _vectors_from_unitary(v, d))
    step = cfg.step_init
    decay = (cfg.step_min / cfg.step_init) ** (1.0 / cfg.max_iters)
    for _ in range(cfg.max_iters):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        cand = _qr_unitary(v + step * g)
        cand_val = _objective_vectors(sig, probs, _vectors_from_unitary(cand, d))
        if cand_val > val:
            v, val = cand, cand_val
        step = max(step * decay, cfg.step_min)
    return val, v


def accessible_information(
    ens: CQEnsemble, cfg: OptimizerConfig = OptimizerConfig(), extra_candidates=()
) -> AccessibleInfoResult:
    """Best measured mutual information over candidate bases and random restarts.

    extra_candidates holds unitaries whose column bases are tried before the
    random search (used for the MUB partner of locking instances).
    """
    d = ens.dim_b
    if d > MAX_DIM_B:
        raise GuardError("instance too large")
    n = cfg.budget_for(d)
    chi = holevo_chi(ens)
    sig = np.stack(ens.states)
    probs = ens.probs

    best_val = -1.0
    best_povm = None
    for u in _candidate_unitaries(ens, cfg, extra_candidates):
        povm = projective_povm(u)
        w = np.column_stack([u[:, j] for j in range(d)])
        val = _objective_vectors(sig, probs, w)
        if val > best_val:
            best_val, best_povm = val, povm

    restart_vals = []
    for r in range(cfg.restarts):
        rng = np.random.default_rng(cfg.seed + r)
        val, v = _hill_climb(sig, probs, cfg, d, n, rng)
        restart_vals.append(val)
        if val > best_val:
            best_val = val
            best_povm = _povm_from_vectors(_vectors_from_unitary(v, d))

    return AccessibleInfoResult(
        value=float(best_val),
        best_povm=best_povm,
        upper_bound=float(chi),
        per_restart_values=tuple(restart_vals),
        converged=True,
    )


def optimize_povm(ens: CQEnsemble, cfg: OptimizerConfig = OptimizerConfig(), extra_candidates=()) -> Povm:
    """The maximizing POVM found by accessible_information."""
    return accessible_information(ens, cfg, extra_candidates).best_povm
