"""Quantum discord of CQ states, the locking advantage and its identity checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qmath import (
    DensityMatrix,
    classical_mutual_information,
    quantum_conditional_entropy,
    quantum_mutual_information,
)
from .states import CQEnsemble, LockingInstance, build_locking_state, cq_to_density
from .measurement import measured_conditional_entropy, projective_povm
from .accessible import AccessibleInfoResult, OptimizerConfig, accessible_information

__all__ = [
    "DiscordReport",
    "LockingReport",
    "ChainReport",
    "quantum_discord_cq",
    "key_then_measure_info",
    "locking_delta",
    "single_copy_identity_chain",
    "extend_with_key",
]


@dataclass(frozen=True)
class DiscordReport:
    mutual_info_q: float
    i_acc: float
    discord: float
    cond_entropy_q: float
    min_measured_cond_entropy: float
    identity_residual: float
    optimizer: AccessibleInfoResult | None = None


@dataclass(frozen=True)
class LockingReport:
    m: int
    key_bits: int
    i_acc_with_key: float
    i_acc_without_key: float
    i_q_without_key: float
    delta: float
    discord: float
    delta_equals_discord_residual: float
    optimizer: AccessibleInfoResult | None = None


@dataclass(frozen=True)
class ChainReport:
    """The three quantities of the single-copy chain and their spread."""

    i_acc_with_key: float
    i_q_with_key: float
    i_q_plus_key: float
    max_residual: float
    inequalities_hold: bool


def quantum_discord_cq(
    ens: CQEnsemble, cfg: OptimizerConfig = OptimizerConfig(), extra_candidates=()
) -> DiscordReport:
    """Discord = quantum mutual information minus best-found accessible information.

    The measured-conditional-entropy identity is cross-checked with the same
    best POVM on both sides and the residual reported.
    """
    rho = cq_to_density(ens)
    na, db = ens.n_letters, ens.dim_b
    iq = quantum_mutual_information(rho, na, db)
    acc = accessible_information(ens, cfg, extra_candidates)
    discord = iq - acc.value
    cond_q = quantum_conditional_entropy(rho, na, db)
    min_mce = measured_conditional_entropy(ens, acc.best_povm)
    return DiscordReport(
        mutual_info_q=float(iq),
        i_acc=float(acc.value),
        discord=float(discord),
        cond_entropy_q=float(cond_q),
        min_measured_cond_entropy=float(min_mce),
        identity_residual=float(abs(discord - (min_mce - cond_q))),
        optimizer=acc,
    )


def _check_instance_matches(inst: LockingInstance, ens: CQEnsemble):
    d = inst.dim_b
    if ens.n_letters != 2 * d or ens.dim_b != d:
        raise ValueError("ensemble does not match the locking instance")
    for a in range(d):
        for k in range(2):
            col = inst.basis_unitaries[k][:, a]
            if np.max(np.abs(ens.states[a * 2 + k] - np.outer(col, col.conj()))) > 1e-9:
                raise ValueError("ensemble does not match the locking instance")


def key_then_measure_info(inst: LockingInstance, ens: CQEnsemble) -> float:
    """Exact accessible information of the key-conditioned strategy.

    For each key k Bob measures in the basis U_k, which reveals a with
    certainty; the result is the classical mutual information between the
    letter (a, k) and the pair (outcome, k).
    """
    _check_instance_matches(inst, ens)
    d = inst.dim_b
    n = 2 * d
    joint = np.zeros((n, n))
    for a in range(d):
        for k in range(2):
            u = inst.basis_unitaries[k]
            amps = u.conj().T @ u[:, a]
            born = np.abs(amps) ** 2
            for b in range(d):
                joint[a * 2 + k, b * 2 + k] += born[b] / n
    return classical_mutual_information(joint / joint.sum())


def locking_delta(
    inst: LockingInstance, cfg: OptimizerConfig = OptimizerConfig(), ens: CQEnsemble | None = None
) -> LockingReport:
    """Locking advantage: with-key information minus (without-key + key bits).

    The with-key term is exact (the key-conditioned measurement is optimal);
    only the without-key term is numerical. The discord of the shared state
    is computed from the same search so the residual isolates the identity.
    """
    if ens is None:
        _, ens = build_locking_state(inst.m, inst.basis_family)
    else:
        _check_instance_matches(inst, ens)
    i_with = key_then_measure_info(inst, ens)
    mub_partners = inst.basis_unitaries[1:]
    acc = accessible_information(ens, cfg, extra_candidates=mub_partners)
    rho = cq_to_density(ens)
    iq = quantum_mutual_information(rho, ens.n_letters, ens.dim_b)
    delta = i_with - (acc.value + inst.key_size)
    discord = iq - acc.value
    return LockingReport(
        m=inst.m,
        key_bits=inst.key_size,
        i_acc_with_key=float(i_with),
        i_acc_without_key=float(acc.value),
        i_q_without_key=float(iq),
        delta=float(delta),
        discord=float(discord),
        delta_equals_discord_residual=float(abs(delta - discord)),
        optimizer=acc,
    )


def extend_with_key(probs, states, keys, n_keys: int):
    """Append a classical copy of the key to Bob: sigma_(a,k) -> sigma_(a,k) (x) |k><k|."""
    ext = []
    for s, k in zip(states, keys):
        proj = np.zeros((n_keys, n_keys))
        proj[k, k] = 1.0
        ext.append(np.kron(np.asarray(s, dtype=complex), proj))
    return CQEnsemble(labels=tuple(range(len(ext))), probs=np.asarray(probs, dtype=float), states=tuple(ext))


def single_copy_identity_chain(inst: LockingInstance, cfg: OptimizerConfig = OptimizerConfig()) -> ChainReport:
    """Check I_acc(key strategy) = I_q(with key on Bob) = I_q(without key) + |K|."""
    _, ens = build_locking_state(inst.m, inst.basis_family)
    v1 = key_then_measure_info(inst, ens)

    keys = [lab % 2 for lab in ens.labels]
    ext = extend_with_key(ens.probs, ens.states, keys, 2)
    v2 = quantum_mutual_information(cq_to_density(ext), ext.n_letters, ext.dim_b)

    v3 = quantum_mutual_information(cq_to_density(ens), ens.n_letters, ens.dim_b) + inst.key_size

    vals = (v1, v2, v3)
    resid = max(vals) - min(vals)
    cap = inst.m + inst.key_size
    ineq = v2 <= v3 + 1e-9 and v3 <= cap + 1e-9
    return ChainReport(
        i_acc_with_key=float(v1),
        i_q_with_key=float(v2),
        i_q_plus_key=float(v3),
        max_residual=float(resid),
        inequalities_hold=bool(ineq),
    )
