"""Brute-force state-vector oracle for subset entanglement entropies.

Qubit 0 is the most significant bit of a basis index, so the amplitude array
reshaped to ``(2,) * k`` has qubit ``q`` on axis ``q``. Reduced density
matrices list the kept qubits in ascending index order.

Eigenvalues come from a cyclic Jacobi solver for Hermitian matrices. Sweeps
use the round-robin ordering, which splits each sweep into rounds of
disjoint index pairs that are rotated together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

import numpy as np

from .epr_model import EntropyVector, EprGraph
from .errors import DomainError, NumericIntegrityError, ResourceError
from .subsets import check_parties, nonempty_masks

ENVIRONMENT = "env"
DEFAULT_QUBIT_CAP = 12
MAX_QUBIT_CAP = 14

NORM_TOL = 1e-12
JACOBI_TOL = 1e-12
CLIP = 1e-10
TRACE_TOL = 1e-9
HERMITIAN_TOL = 1e-9
ORACLE_TOL = 1e-9

Party = Union[int, str]


def _check_cap(k: int, cap: int) -> None:
    if not 1 <= cap <= MAX_QUBIT_CAP:
        raise ResourceError(f"qubit cap must be in 1..{MAX_QUBIT_CAP}, got {cap}")
    if k > cap:
        raise ResourceError(f"{k} qubits exceeds the cap of {cap}")


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray
    assignment: tuple[Party, ...]
    cap: int = DEFAULT_QUBIT_CAP

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        k = int(amps.size).bit_length() - 1
        if k < 1 or amps.size != 1 << k:
            raise DomainError(f"amplitude count {amps.size} is not 2**k with k >= 1")
        _check_cap(k, self.cap)
        assignment = tuple(self.assignment)
        if len(assignment) != k:
            raise DomainError(f"assignment covers {len(assignment)} qubits, state has {k}")
        for p in assignment:
            if p != ENVIRONMENT and (not isinstance(p, int) or isinstance(p, bool) or p < 1):
                raise DomainError(f"qubit owner must be a party >= 1 or {ENVIRONMENT!r}, got {p!r}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state norm^2 is {norm!r}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "assignment", assignment)

    @property
    def k(self) -> int:
        return len(self.assignment)

    @property
    def max_party(self) -> int:
        return max((p for p in self.assignment if p != ENVIRONMENT), default=0)

    def qubits_of(self, subset: int) -> list[int]:
        return [
            q for q, p in enumerate(self.assignment)
            if p != ENVIRONMENT and subset >> (p - 1) & 1
        ]


def _normalize(v: np.ndarray) -> np.ndarray:
    return v / np.sqrt(np.vdot(v, v).real)


def make_state(
    name: str,
    k: int | None = None,
    seed: int | None = None,
    assignment: Sequence[Party] | None = None,
    cap: int = DEFAULT_QUBIT_CAP,
) -> StateVector:
    """Build ``bell``, ``ghz``, ``w``, ``product`` or ``random`` states.

    Without an assignment, qubit ``q`` belongs to party ``q + 1``.
    """
    if name == "bell":
        if k not in (None, 2):
            raise DomainError("a Bell pair has exactly 2 qubits")
        k = 2
    if k is None:
        raise DomainError(f"state {name!r} needs a qubit count")
    if k < 1:
        raise DomainError(f"qubit count must be >= 1, got {k}")
    _check_cap(k, cap)
    dim = 1 << k
    amps = np.zeros(dim, dtype=np.complex128)
    if name in ("bell", "ghz"):
        amps[0] = amps[-1] = 1 / math.sqrt(2)
    elif name == "w":
        for q in range(k):
            amps[1 << (k - 1 - q)] = 1 / math.sqrt(k)
    elif name == "product":
        amps[0] = 1
    elif name == "random":
        if seed is None:
            raise DomainError("random states need a seed")
        rng = np.random.default_rng(seed)
        amps = _normalize(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
    else:
        raise DomainError(f"unknown state {name!r}")
    if assignment is None:
        assignment = range(1, k + 1)
    return StateVector(amps, tuple(assignment), cap)


def _matrix_of(state: StateVector, keep: Sequence[int]) -> np.ndarray:
    """Amplitudes as a ``2**len(keep) x 2**(k - len(keep))`` matrix."""
    k = state.k
    rest = [q for q in range(k) if q not in set(keep)]
    psi = state.amplitudes.reshape((2,) * k).transpose(list(keep) + rest)
    return psi.reshape(1 << len(keep), 1 << len(rest))


def reduced_density(state: StateVector, subset: int) -> np.ndarray:
    """Partial trace onto the qubits owned by parties in ``subset``."""
    if subset < 1:
        raise DomainError("subset must be nonempty")
    m = _matrix_of(state, state.qubits_of(subset))
    return m @ m.conj().T


def _round_robin(size: int) -> list[tuple[np.ndarray, np.ndarray]]:
    players = list(range(size + (size % 2)))
    half = len(players) // 2
    rounds = []
    for _ in range(len(players) - 1):
        ps, qs = [], []
        for i in range(half):
            a, b = players[i], players[-1 - i]
            if a < size and b < size:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(
    matrix: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100
) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm drops below ``tol``.
    Returns ascending eigenvalues and the unitary whose columns are the
    matching eigenvectors, so ``matrix == U @ diag(w) @ U^H``.
    """
    a = np.array(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    size = a.shape[0]
    a = (a + a.conj().T) / 2
    v = np.eye(size, dtype=np.complex128)
    schedule = _round_robin(size)
    for _ in range(max_sweeps):
        if _off_norm(a) < tol:
            break
        for p, q in schedule:
            apq = a[p, q]
            r = np.abs(apq)
            live = r > 0
            phase = np.where(live, apq / np.where(live, r, 1), 1)
            theta = (a[q, q].real - a[p, p].real) / (2 * np.where(live, r, 1))
            sign = np.where(theta >= 0, 1.0, -1.0)
            t = np.where(live, sign / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
            c = 1 / np.sqrt(1 + t * t)
            s = t * c
            # G restricted to (p, q): [[c, s], [-s * conj(phase), c * conj(phase)]]
            gpp, gpq = c, s
            gqp, gqq = -s * phase.conj(), c * phase.conj()
            cp, cq = a[:, p], a[:, q]
            a[:, p], a[:, q] = cp * gpp + cq * gqp, cp * gpq + cq * gqq
            rp, rq = a[p, :], a[q, :]
            a[p, :] = gpp[:, None] * rp + gqp.conj()[:, None] * rq
            a[q, :] = gpq[:, None] * rp + gqq.conj()[:, None] * rq
            a[p, q] = 0
            a[q, p] = 0
            vp, vq = v[:, p], v[:, q]
            v[:, p], v[:, q] = vp * gpp + vq * gqp, vp * gpq + vq * gqq
    else:
        if _off_norm(a) >= tol:
            raise NumericIntegrityError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def von_neumann_entropy(rho: np.ndarray) -> float:
    """``-sum(l * log2(l))`` over the eigenvalues of a density matrix, in bits."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise NumericIntegrityError(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise NumericIntegrityError("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1) > TRACE_TOL:
        raise NumericIntegrityError(f"density matrix trace is {tr!r}, expected 1")
    w, _ = jacobi_eigh(rho)
    if w[0] <= -CLIP:
        raise NumericIntegrityError(f"density matrix has eigenvalue {w[0]!r} < 0")
    w = w[w >= CLIP]
    return float(-np.sum(w * np.log2(w)))


def _subset_entropy(state: StateVector, subset: int) -> float:
    keep = state.qubits_of(subset)
    if not keep or len(keep) == state.k:
        return 0.0
    m = _matrix_of(state, keep)
    # same nonzero spectrum either way; diagonalize the smaller Gram matrix
    gram = m @ m.conj().T if m.shape[0] <= m.shape[1] else m.conj().T @ m
    return von_neumann_entropy(gram)


def oracle_entropy_vector(state: StateVector, n: int) -> EntropyVector:
    check_parties(n)
    if state.max_party > n:
        raise DomainError(f"state assigns qubits to party {state.max_party} > {n}")
    values = {m: _subset_entropy(state, m) for m in nonempty_masks(n)}
    return EntropyVector(n, values, tol=ORACLE_TOL)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary: QR of a complex Gaussian matrix with R's diagonal phases removed."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def apply_local(state: StateVector, qubits: Sequence[int], unitary: np.ndarray) -> StateVector:
    """Apply ``unitary`` to the listed qubits (first listed = most significant)."""
    m = _matrix_of(state, qubits)
    out = unitary @ m
    k = state.k
    rest = [q for q in range(k) if q not in set(qubits)]
    perm = list(qubits) + rest
    psi = out.reshape((2,) * k).transpose(np.argsort(perm))
    return StateVector(psi.ravel(), state.assignment, state.cap)


@dataclass(frozen=True)
class ProtocolSpec:
    n: int
    pair_counts: Mapping[tuple[int, int], int] = field(default_factory=dict)
    scramble_rounds: int = 0
    seed: int = 0
    cap: int = DEFAULT_QUBIT_CAP

    def __post_init__(self):
        check_parties(self.n)
        counts = {}
        for key, c in dict(self.pair_counts).items():
            i, j = sorted(key)
            if not 1 <= i < j <= self.n:
                raise DomainError(f"pair {key} invalid for {self.n} parties")
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise DomainError(f"pair count for {(i, j)} must be a nonnegative integer")
            counts[(i, j)] = counts.get((i, j), 0) + c
        object.__setattr__(self, "pair_counts", {k: counts[k] for k in sorted(counts) if counts[k]})
        if self.scramble_rounds < 0:
            raise DomainError("scramble_rounds must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 unsigned bits")
        if not self.pair_counts:
            raise DomainError("protocol needs at least one EPR pair")
        _check_cap(self.qubits, self.cap)

    @property
    def qubits(self) -> int:
        return 2 * sum(self.pair_counts.values())


def run_protocol(spec: ProtocolSpec) -> tuple[StateVector, EprGraph]:
    """Distribute EPR pairs, then scramble each party's qubits with local unitaries.

    Pairs are laid out in lexicographic pair order, each repetition taking two
    consecutive qubits (first to the lower party). Each scramble round draws
    one Haar unitary per party, parties ascending, acting only on that
    party's qubits.
    """
    bell = np.array([1, 0, 0, 1], dtype=np.complex128) / math.sqrt(2)
    amps = np.ones(1, dtype=np.complex128)
    assignment: list[int] = []
    for (i, j), count in spec.pair_counts.items():
        for _ in range(count):
            amps = np.kron(amps, bell)
            assignment += [i, j]
    state = StateVector(amps, tuple(assignment), spec.cap)
    rng = np.random.default_rng(spec.seed)
    for _ in range(spec.scramble_rounds):
        for party in range(1, spec.n + 1):
            qubits = [q for q, p in enumerate(assignment) if p == party]
            if qubits:
                state = apply_local(state, qubits, random_unitary(1 << len(qubits), rng))
    predicted = EprGraph(spec.n, dict(spec.pair_counts))
    return state, predicted

