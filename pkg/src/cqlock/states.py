"""Classical-quantum ensembles, locking states and mutually unbiased bases."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qmath import DEFAULT_TOL, DensityMatrix, DimensionError, validate_density, validate_probs

__all__ = [
    "CQEnsemble",
    "LockingInstance",
    "cq_to_density",
    "build_locking_state",
    "mub_check",
    "fourier_matrix",
    "hadamard_tensor",
    "random_cq_ensemble",
    "ensemble_to_json_dict",
    "ensemble_from_json_dict",
]

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True)
class CQEnsemble:
    """Labeled distribution {p_a} with one Bob-side state per letter."""

    labels: tuple
    probs: np.ndarray
    states: tuple

    def __post_init__(self):
        probs = validate_probs(self.probs)
        states = tuple(np.asarray(s, dtype=complex) for s in self.states)
        if not (len(self.labels) == len(probs) == len(states)):
            raise ValueError("labels, probs and states must have equal length")
        dim = states[0].shape[0]
        for s in states:
            if s.shape != (dim, dim):
                raise ValueError("all states must share one dimension")
            validate_density(s)
        probs = probs.copy()
        probs.setflags(write=False)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "states", states)

    @property
    def n_letters(self) -> int:
        return len(self.labels)

    @property
    def dim_b(self) -> int:
        return self.states[0].shape[0]

    def average_state(self) -> np.ndarray:
        return sum(p * s for p, s in zip(self.probs, self.states))


@dataclass(frozen=True)
class LockingInstance:
    """Message size, key alphabet and the basis unitaries of a locking state.

    Classical letters (a, k) are encoded as the integer a * 2 + k.
    """

    m: int
    key_size: int
    basis_unitaries: tuple
    basis_family: str = "hadamard"

    def __post_init__(self):
        if self.key_size != 1:
            raise ValueError("only a single key bit is supported")
        us = tuple(np.asarray(u, dtype=complex) for u in self.basis_unitaries)
        d = 2**self.m
        if np.max(np.abs(us[0] - np.eye(d))) > 1e-9:
            raise ValueError("first basis unitary must be the identity")
        for u in us:
            if u.shape != (d, d):
                raise ValueError("basis unitary has wrong dimension")
            if np.max(np.abs(u.conj().T @ u - np.eye(d))) > 1e-9:
                raise ValueError("basis matrix is not unitary")
        for i in range(len(us)):
            for j in range(i + 1, len(us)):
                if not mub_check(us[i], us[j], 1e-9):
                    raise ValueError("basis pair is not mutually unbiased")
        object.__setattr__(self, "basis_unitaries", us)

    @property
    def dim_b(self) -> int:
        return 2**self.m


def cq_to_density(ens: CQEnsemble) -> DensityMatrix:
    """Block-diagonal embedding sum_a p_a |a><a| (x) sigma^(a)."""
    n, d = ens.n_letters, ens.dim_b
    out = np.zeros((n * d, n * d), dtype=complex)
    for a, (p, s) in enumerate(zip(ens.probs, ens.states)):
        out[a * d : (a + 1) * d, a * d : (a + 1) * d] = p * s
    return DensityMatrix(out)


def hadamard_tensor(m: int) -> np.ndarray:
    """m-fold tensor power of the 2x2 Hadamard."""
    u = np.array([[1.0]], dtype=complex)
    for _ in range(m):
        u = np.kron(u, HADAMARD)
    return u


def fourier_matrix(d: int) -> np.ndarray:
    """Discrete Fourier unitary with entries w^{jk}/sqrt(d)."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.exp(2j * np.pi * j * k / d) / np.sqrt(d)


def mub_check(u, v, tol: float = 1e-9) -> bool:
    """True iff the bases given by the columns of u and v are mutually unbiased."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape or u.shape[0] != u.shape[1]:
        raise DimensionError("unitaries must be square and of equal dimension")
    d = u.shape[0]
    overlaps = np.abs(u.conj().T @ v) ** 2
    return bool(np.max(np.abs(overlaps - 1.0 / d)) <= tol)


def build_locking_state(m: int, family: str = "hadamard"):
    """Locking instance and its ensemble: uniform letters (a, k), states U_k|a><a|U_k+.

    family selects the second basis: "hadamard" for H^(x)m, "fourier" for the
    d-dimensional Fourier matrix.
    """
    if not 1 <= m <= 6:
        raise ValueError("message size out of range (1..6)")
    d = 2**m
    if family == "hadamard":
        u1 = hadamard_tensor(m)
    elif family == "fourier":
        u1 = fourier_matrix(d)
    else:
        raise ValueError(f"unknown basis family: {family!r}")
    inst = LockingInstance(m=m, key_size=1, basis_unitaries=(np.eye(d, dtype=complex), u1), basis_family=family)

    # letter (a, k) sits at index a * 2 + k
    states = []
    for a in range(d):
        for k in range(2):
            col = inst.basis_unitaries[k][:, a]
            states.append(np.outer(col, col.conj()))
    probs = np.full(2 * d, 1.0 / (2 * d))
    ens = CQEnsemble(labels=tuple(range(2 * d)), probs=probs, states=tuple(states))
    return inst, ens


def random_cq_ensemble(n_letters: int, dim_b: int, purity: str = "pure", seed: int = 0) -> CQEnsemble:
    """Seeded random ensemble for property sweeps.

    Probabilities come from a flat Dirichlet; pure letters are normalized
    complex Gaussian vectors, mixed letters normalized Wishart products.
    """
    if n_letters < 1 or dim_b < 2:
        raise ValueError("need at least one letter and dimension 2")
    rng = np.random.default_rng(seed)
    probs = rng.dirichlet(np.ones(n_letters))
    states = []
    for _ in range(n_letters):
        if purity == "pure":
            v = rng.standard_normal(dim_b) + 1j * rng.standard_normal(dim_b)
            v /= np.linalg.norm(v)
            states.append(np.outer(v, v.conj()))
        elif purity == "mixed":
            g = rng.standard_normal((dim_b, dim_b)) + 1j * rng.standard_normal((dim_b, dim_b))
            w = g @ g.conj().T
            states.append(w / np.trace(w).real)
        else:
            raise ValueError(f"unknown purity: {purity!r}")
    return CQEnsemble(labels=tuple(range(n_letters)), probs=probs, states=tuple(states))


def _matrix_to_json(mat: np.ndarray):
    return [[[float(x.real), float(x.imag)] for x in row] for row in mat]


def _matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def ensemble_to_json_dict(ens: CQEnsemble) -> dict:
    return {
        "labels": list(ens.labels),
        "probs": [float(p) for p in ens.probs],
        "dim_b": ens.dim_b,
        "states": [_matrix_to_json(s) for s in ens.states],
    }


def ensemble_from_json_dict(doc: dict) -> CQEnsemble:
    states = tuple(_matrix_from_json(s) for s in doc["states"])
    dim_b = int(doc["dim_b"])
    for s in states:
        if s.shape != (dim_b, dim_b):
            raise ValueError("state dimension disagrees with dim_b")
    return CQEnsemble(labels=tuple(doc["labels"]), probs=np.asarray(doc["probs"], dtype=float), states=states)
