"""Exact statevector simulation with complete computational-basis measurement.

States are stored sparsely (basis index -> complex amplitude).  The access
scenarios in this package spend nearly all their time in basis-like states
(GHZ preparation, single-qubit rotations, measurements), so sparse storage
keeps even 18-qubit runs cheap while remaining exact.  Dense access is
available through :meth:`StateVector.to_array` for small systems.

Qubit ordering is little-endian: qubit 0 is the least-significant bit of
the amplitude index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from .rng import RngStream

QUBIT_CAP = 20

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

ONE_QUBIT_KINDS = ("H", "X", "Y", "Z", "S", "Sdg", "T", "IDENTITY")
TWO_QUBIT_KINDS = ("CNOT", "SWAP")
GATE_KINDS = ONE_QUBIT_KINDS + TWO_QUBIT_KINDS + ("QFT",)


class CapacityError(Exception):
    """Requested state exceeds the simulator qubit cap."""


class GateError(Exception):
    """Gate arity or target out of range."""


class StateError(Exception):
    """State precondition violated (e.g. GHZ targets not in |0...0>)."""


@dataclass(frozen=True)
class GateSpec:
    """A named gate applied to an ordered tuple of qubit indices."""

    kind: str
    targets: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        if self.kind not in GATE_KINDS:
            raise GateError(f"unknown gate kind {self.kind!r}")
        arity = len(self.targets)
        if len(set(self.targets)) != arity:
            raise GateError(f"{self.kind} targets must be distinct: {self.targets}")
        if self.kind in ONE_QUBIT_KINDS and arity != 1:
            raise GateError(f"{self.kind} takes 1 target, got {arity}")
        if self.kind in TWO_QUBIT_KINDS and arity != 2:
            raise GateError(f"{self.kind} takes 2 targets, got {arity}")
        if self.kind == "QFT" and arity < 1:
            raise GateError("QFT takes at least 1 target")


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of a complete measurement over ``targets``.

    ``outcome[i]`` is the measured bit of ``targets[i]``; ``probability``
    is the pre-measurement Born weight of that outcome.
    """

    targets: Tuple[int, ...]
    outcome: str
    probability: float

    def bits(self) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.outcome)


class StateVector:
    """Complex amplitudes over an ordered qubit set; immutable in interface."""

    __slots__ = ("num_qubits", "_amps")

    def __init__(self, num_qubits: int, amps: Dict[int, complex]):
        self.num_qubits = num_qubits
        self._amps = amps

    # -- construction -------------------------------------------------

    @staticmethod
    def zero(num_qubits: int) -> "StateVector":
        if num_qubits < 1 or num_qubits > QUBIT_CAP:
            raise CapacityError(
                f"num_qubits={num_qubits} outside [1, {QUBIT_CAP}]")
        return StateVector(num_qubits, {0: 1.0 + 0.0j})

    # -- inspection ---------------------------------------------------

    def amplitude(self, index: int) -> complex:
        return self._amps.get(index, 0.0 + 0.0j)

    def nonzero(self) -> Iterable[Tuple[int, complex]]:
        return self._amps.items()

    def norm_sq(self) -> float:
        return sum((a * a.conjugate()).real for a in self._amps.values())

    def to_array(self) -> np.ndarray:
        if self.num_qubits > 22:  # pragma: no cover - guarded by QUBIT_CAP
            raise CapacityError("state too large to densify")
        arr = np.zeros(1 << self.num_qubits, dtype=np.complex128)
        for idx, amp in self._amps.items():
            arr[idx] = amp
        return arr

    def _check_targets(self, targets: Sequence[int]):
        for q in targets:
            if not (0 <= q < self.num_qubits):
                raise GateError(f"qubit {q} out of range for {self.num_qubits}-qubit state")


def new_state(num_qubits: int) -> StateVector:
    """Fresh register state |0...0>."""
    return StateVector.zero(num_qubits)


def _prune(amps: Dict[int, complex]) -> Dict[int, complex]:
    # Drop exact zeros produced by cancellation; keeps dicts tight without
    # touching the norm.
    return {i: a for i, a in amps.items() if a != 0.0}


def _apply_one_qubit(state: StateVector, kind: str, q: int) -> Dict[int, complex]:
    bit = 1 << q
    amps = state._amps
    if kind == "IDENTITY":
        return dict(amps)
    if kind == "X":
        return {i ^ bit: a for i, a in amps.items()}
    if kind == "Y":
        return {i ^ bit: (1j * a if not i & bit else -1j * a) for i, a in amps.items()}
    if kind in ("Z", "S", "Sdg", "T"):
        phase = {"Z": -1.0, "S": 1j, "Sdg": -1j, "T": complex(_INV_SQRT2, _INV_SQRT2)}[kind]
        return {i: (a * phase if i & bit else a) for i, a in amps.items()}
    if kind == "H":
        out: Dict[int, complex] = {}
        for i, a in amps.items():
            lo = i & ~bit
            hi = i | bit
            h = a * _INV_SQRT2
            if i & bit:
                out[lo] = out.get(lo, 0.0) + h
                out[hi] = out.get(hi, 0.0) - h
            else:
                out[lo] = out.get(lo, 0.0) + h
                out[hi] = out.get(hi, 0.0) + h
        return _prune(out)
    raise GateError(f"unknown one-qubit gate {kind}")  # pragma: no cover


def _apply_qft(state: StateVector, targets: Sequence[int], inverse: bool = False) -> Dict[int, complex]:
    # Textbook transform on the target subspace: |x> -> 2^{-k/2} sum_y w^{xy} |y>
    # with w = exp(2*pi*i/2^k).  targets[0] is the most significant bit of x.
    k = len(targets)
    dim = 1 << k
    sign = -1.0 if inverse else 1.0
    omega = np.exp(sign * 2j * np.pi / dim)
    scale = dim ** -0.5
    masks = [1 << q for q in targets]

    def sub_index(i: int) -> int:
        x = 0
        for pos, m in enumerate(masks):
            if i & m:
                x |= 1 << (k - 1 - pos)
        return x

    groups: Dict[int, Dict[int, complex]] = {}
    for i, a in state._amps.items():
        rest = i
        for m in masks:
            rest &= ~m
        groups.setdefault(rest, {})[sub_index(i)] = a

    out: Dict[int, complex] = {}
    pows = omega ** np.arange(dim)
    for rest, sub in groups.items():
        vec = np.zeros(dim, dtype=np.complex128)
        for x, a in sub.items():
            vec += a * scale * pows ** x
        for y in range(dim):
            a = vec[y]
            if a == 0.0:
                continue
            i = rest
            for pos, m in enumerate(masks):
                if y & (1 << (k - 1 - pos)):
                    i |= m
            out[i] = out.get(i, 0.0) + a
    return _prune(out)


def apply_gate(state: StateVector, gate: GateSpec) -> StateVector:
    """Return U|psi> for the gate's unitary; the input state is unchanged."""
    state._check_targets(gate.targets)
    if gate.kind in ONE_QUBIT_KINDS:
        amps = _apply_one_qubit(state, gate.kind, gate.targets[0])
    elif gate.kind == "CNOT":
        c, t = gate.targets
        cbit, tbit = 1 << c, 1 << t
        amps = {(i ^ tbit if i & cbit else i): a for i, a in state._amps.items()}
    elif gate.kind == "SWAP":
        a_bit, b_bit = 1 << gate.targets[0], 1 << gate.targets[1]
        amps = {}
        for i, amp in state._amps.items():
            ba, bb = bool(i & a_bit), bool(i & b_bit)
            j = i
            if ba != bb:
                j ^= a_bit | b_bit
            amps[j] = amp
    elif gate.kind == "QFT":
        amps = _apply_qft(state, gate.targets)
    else:  # pragma: no cover
        raise GateError(f"unhandled gate {gate.kind}")
    return StateVector(state.num_qubits, amps)


def apply_qft_inverse(state: StateVector, targets: Sequence[int]) -> StateVector:
    """Inverse of the QFT gate (testing aid)."""
    state._check_targets(targets)
    return StateVector(state.num_qubits, _apply_qft(state, targets, inverse=True))


def outcome_distribution(state: StateVector, targets: Sequence[int]) -> Dict[str, float]:
    """Born weights of every outcome bitstring over ``targets``."""
    state._check_targets(targets)
    weights: Dict[str, float] = {}
    masks = [1 << q for q in targets]
    for i, a in state._amps.items():
        key = "".join("1" if i & m else "0" for m in masks)
        weights[key] = weights.get(key, 0.0) + (a * a.conjugate()).real
    return weights


def measure_complete(state: StateVector, targets: Sequence[int],
                     rng: RngStream) -> Tuple[MeasurementRecord, StateVector]:
    """Sample a computational-basis outcome over ``targets`` (Born rule).

    Returns the record and the normalized post-measurement state.
    Deterministic for a given stream position.
    """
    targets = tuple(targets)
    if not targets:
        raise GateError("measurement needs at least one target")
    if len(set(targets)) != len(targets):
        raise GateError("measurement targets must be distinct")
    state._check_targets(targets)

    masks = [1 << q for q in targets]
    weights: Dict[int, float] = {}
    for i, a in state._amps.items():
        key = 0
        for pos, m in enumerate(masks):
            if i & m:
                key |= 1 << pos
        weights[key] = weights.get(key, 0.0) + (a * a.conjugate()).real

    keys = sorted(weights)
    probs = [weights[k] for k in keys]
    pick = keys[rng.choice_index(probs)]
    prob = weights[pick]
    if prob <= 0.0:  # pragma: no cover - unreachable by construction
        raise StateError("selected zero-norm measurement branch")

    scale = 1.0 / math.sqrt(prob)
    amps: Dict[int, complex] = {}
    for i, a in state._amps.items():
        key = 0
        for pos, m in enumerate(masks):
            if i & m:
                key |= 1 << pos
        if key == pick:
            amps[i] = a * scale
    outcome = "".join("1" if pick & (1 << pos) else "0" for pos in range(len(targets)))
    record = MeasurementRecord(targets=targets, outcome=outcome, probability=prob)
    return record, StateVector(state.num_qubits, amps)


def prepare_ghz(state: StateVector, targets: Sequence[int]) -> StateVector:
    """Put ``targets`` into (|0...0> + |1...1>)/sqrt(2).

    Targets must currently be in |0...0> (checked by amplitude inspection);
    implemented as H on the first target followed by a CNOT chain.
    """
    targets = tuple(targets)
    state._check_targets(targets)
    mask = 0
    for q in targets:
        mask |= 1 << q
    for i, a in state._amps.items():
        if i & mask and abs(a) > 1e-10:
            raise StateError("GHZ targets must start in |0...0>")
    out = apply_gate(state, GateSpec("H", (targets[0],)))
    for q in targets[1:]:
        out = apply_gate(out, GateSpec("CNOT", (targets[0], q)))
    return out


def dump_lines(state: StateVector) -> list[str]:
    """Debug dump: ``index bitstring re im`` for every |amp| > 1e-12."""
    lines = []
    for idx in sorted(state._amps):
        amp = state._amps[idx]
        if abs(amp) <= 1e-12:
            continue
        bits = format(idx, f"0{state.num_qubits}b")
        lines.append(f"{idx} {bits} {amp.real:.12f} {amp.imag:.12f}")
    return lines
