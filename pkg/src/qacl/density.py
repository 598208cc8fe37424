"""Reduced density matrices: the entanglement oracle.

``partial_trace`` plus ``purity`` decide whether a subsystem is in a
product state with the rest of the register file, independently of any
bookkeeping the access-control models do.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence

import numpy as np

from .quantum import StateVector


@dataclass
class DensityMatrix:
    """A dim x dim density operator."""

    dim: int
    mat: np.ndarray

    def __post_init__(self):
        if self.mat.shape != (self.dim, self.dim):
            raise ValueError("density matrix shape mismatch")
        if np.max(np.abs(self.mat - self.mat.conj().T)) > 1e-10:
            raise ValueError("density matrix not Hermitian")
        if abs(np.trace(self.mat).real - 1.0) > 1e-10:
            raise ValueError("density matrix trace != 1")

    def validate(self) -> None:
        """Full invariant check including the eigenvalue floor."""
        eig = np.linalg.eigvalsh(self.mat)
        if eig.min() < -1e-9:
            raise ValueError(f"negative eigenvalue {eig.min()}")


def partial_trace(state: StateVector, keep: Sequence[int]) -> DensityMatrix:
    """Reduced density operator on ``keep``, tracing out the complement.

    Bit i of the reduced basis index is the value of qubit ``keep[i]``.
    """
    keep = tuple(keep)
    if not keep:
        raise ValueError("keep must be nonempty")
    if len(set(keep)) != len(keep):
        raise ValueError("keep indices must be distinct")
    state._check_targets(keep)

    masks = [1 << q for q in keep]
    keep_mask = 0
    for m in masks:
        keep_mask |= m
    dim = 1 << len(keep)

    groups: Dict[int, list] = {}
    for i, a in state.nonzero():
        sub = 0
        for pos, m in enumerate(masks):
            if i & m:
                sub |= 1 << pos
        groups.setdefault(i & ~keep_mask, []).append((sub, a))

    rho = np.zeros((dim, dim), dtype=np.complex128)
    for entries in groups.values():
        vec = np.zeros(dim, dtype=np.complex128)
        for sub, a in entries:
            vec[sub] += a
        rho += np.outer(vec, vec.conj())
    return DensityMatrix(dim=dim, mat=rho)


def purity(dm: DensityMatrix) -> float:
    """trace(rho^2), in (0, 1]; 1 exactly for pure states."""
    return float(np.trace(dm.mat @ dm.mat).real)


def is_product(state: StateVector, subset: Sequence[int], tol: float = 1e-9) -> bool:
    """True iff ``subset`` factors out of the global state (within tol)."""
    subset = tuple(subset)
    if not subset or len(subset) >= state.num_qubits:
        raise ValueError("subset must be proper and nonempty")
    return purity(partial_trace(state, subset)) >= 1.0 - tol
