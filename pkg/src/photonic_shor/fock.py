"""Bosonic Fock-space states and their evolution through linear optics.

Photons in ``M`` modes are described by occupation vectors (tuples of
photon counts). A :class:`PhotonicState` stores a sparse map from occupation
vector to complex amplitude. Evolution through an ``M x M`` single-photon
transfer matrix uses permanents of row/column-repeated submatrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

OccupationVector = tuple[int, ...]

DEFAULT_MAX_BASIS_SIZE = 10**7
PRUNE_TOLERANCE = 1e-14
MAX_PERMANENT_SIZE = 20


class CapacityError(RuntimeError):
    """Raised when a Fock basis would exceed the configured size cap."""


def basis_size(mode_count: int, photon_number: int) -> int:
    return math.comb(photon_number + mode_count - 1, photon_number)


def enumerate_basis(
    mode_count: int, photon_number: int, max_size: int = DEFAULT_MAX_BASIS_SIZE
) -> list[OccupationVector]:
    """All occupation vectors with ``photon_number`` photons in ``mode_count`` modes.

    Ordered descending-lexicographically, so photons pile into the first
    modes first: ``enumerate_basis(2, 1) == [(1, 0), (0, 1)]``.
    """
    if mode_count < 1:
        raise ValueError(f"mode_count must be >= 1, got {mode_count}")
    if photon_number < 0:
        raise ValueError(f"photon_number must be >= 0, got {photon_number}")
    size = basis_size(mode_count, photon_number)
    if size > max_size:
        raise CapacityError(
            f"basis for {photon_number} photons in {mode_count} modes has "
            f"{size} elements, above the cap of {max_size}"
        )
    return list(_cached_basis(mode_count, photon_number))


@lru_cache(maxsize=64)
def _cached_basis(mode_count: int, photon_number: int) -> tuple[OccupationVector, ...]:
    out: list[OccupationVector] = []

    def fill(prefix: list[int], remaining: int, modes_left: int) -> None:
        if modes_left == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining, -1, -1):
            fill(prefix + [k], remaining - k, modes_left - 1)

    fill([], photon_number, mode_count)
    return tuple(out)


def _ryser(mats: np.ndarray) -> np.ndarray:
    # Gray-code Ryser over a batch of shape (..., n, n). Column subsets are
    # visited in a fixed order, so results do not depend on batch layout.
    n = mats.shape[-1]
    batch_shape = mats.shape[:-2]
    if n == 0:
        return np.ones(batch_shape, dtype=complex)
    row_sums = np.zeros(batch_shape + (n,), dtype=complex)
    total = np.zeros(batch_shape, dtype=complex)
    in_subset = [False] * n
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        if in_subset[j]:
            row_sums -= mats[..., :, j]
        else:
            row_sums += mats[..., :, j]
        in_subset[j] = not in_subset[j]
        size = bin(k ^ (k >> 1)).count("1")
        prod = np.prod(row_sums, axis=-1)
        if size % 2:
            total -= prod
        else:
            total += prod
    return total if n % 2 == 0 else -total


def permanent(matrix) -> complex:
    """Permanent of a square matrix via Ryser's formula, ``O(2^n n)``."""
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_PERMANENT_SIZE:
        raise ValueError(
            f"matrix of size {a.shape[0]} exceeds the supported size {MAX_PERMANENT_SIZE}"
        )
    return complex(_ryser(a))


def _check_unitary(u: np.ndarray, tol: float) -> None:
    defect = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if defect > tol:
        raise ValueError(f"matrix is not unitary (defect {defect:.3e})")


@dataclass(frozen=True)
class ModeUnitary:
    """Single-photon transfer matrix of an ``M``-mode linear network."""

    entries: np.ndarray
    tolerance: float = 1e-10

    def __post_init__(self) -> None:
        u = np.array(self.entries, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError(f"mode unitary must be square, got shape {u.shape}")
        _check_unitary(u, self.tolerance)
        u.setflags(write=False)
        object.__setattr__(self, "entries", u)

    @property
    def mode_count(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other: "ModeUnitary") -> "ModeUnitary":
        return ModeUnitary(self.entries @ other.entries)

    @classmethod
    def identity(cls, mode_count: int) -> "ModeUnitary":
        return cls(np.eye(mode_count, dtype=complex))


@dataclass(frozen=True)
class PhotonicState:
    """Sparse superposition of occupation vectors with a fixed photon number."""

    amplitudes: Mapping[OccupationVector, complex]
    mode_count: int
    photon_number: int

    def __post_init__(self) -> None:
        amps: dict[OccupationVector, complex] = {}
        for occ, amp in self.amplitudes.items():
            occ = tuple(int(c) for c in occ)
            if len(occ) != self.mode_count:
                raise ValueError(
                    f"occupation {occ} has {len(occ)} modes, expected {self.mode_count}"
                )
            if any(c < 0 for c in occ):
                raise ValueError(f"negative photon count in {occ}")
            if sum(occ) != self.photon_number:
                raise ValueError(
                    f"occupation {occ} holds {sum(occ)} photons, expected {self.photon_number}"
                )
            amps[occ] = amps.get(occ, 0j) + complex(amp)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, occupation: Sequence[int]) -> "PhotonicState":
        occ = tuple(int(c) for c in occupation)
        return cls({occ: 1.0 + 0j}, len(occ), sum(occ))

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def amplitude(self, occupation: Sequence[int]) -> complex:
        return self.amplitudes.get(tuple(occupation), 0j)

    def sorted_items(self) -> list[tuple[OccupationVector, complex]]:
        """Items in the same descending-lexicographic order as :func:`enumerate_basis`."""
        return sorted(self.amplitudes.items(), key=lambda kv: kv[0], reverse=True)

    def to_dict(self) -> dict:
        return {
            "mode_count": self.mode_count,
            "photon_number": self.photon_number,
            "amplitudes": [
                {"occupation": list(occ), "re": amp.real, "im": amp.imag}
                for occ, amp in self.sorted_items()
            ],
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "PhotonicState":
        amps = {
            tuple(item["occupation"]): complex(item["re"], item["im"])
            for item in doc["amplitudes"]
        }
        return cls(amps, int(doc["mode_count"]), int(doc["photon_number"]))


def _expand_indices(occupation: OccupationVector) -> list[int]:
    return [mode for mode, count in enumerate(occupation) for _ in range(count)]


def _factorial_norm(occupation: OccupationVector) -> float:
    return math.prod(math.factorial(c) for c in occupation)


def transition_amplitudes(
    u: np.ndarray, source: OccupationVector, targets: Sequence[OccupationVector]
) -> np.ndarray:
    """``<T|U|S>`` for one source occupation and many target occupations."""
    cols = _expand_indices(source)
    n = len(cols)
    if n == 0:
        return np.ones(len(targets), dtype=complex)
    rows = np.array([_expand_indices(t) for t in targets], dtype=np.intp)
    sub = u[rows[:, :, None], np.asarray(cols)[None, None, :]]
    norms = np.sqrt(
        np.array([_factorial_norm(t) for t in targets]) * _factorial_norm(source)
    )
    return _ryser(sub) / norms


def apply_unitary(
    unitary: ModeUnitary | np.ndarray,
    state: PhotonicState,
    max_basis_size: int = DEFAULT_MAX_BASIS_SIZE,
) -> PhotonicState:
    """Evolve ``state`` through the linear network ``unitary``.

    Amplitudes below ``PRUNE_TOLERANCE`` in magnitude are dropped from the
    result.
    """
    u = unitary.entries if isinstance(unitary, ModeUnitary) else np.asarray(unitary, complex)
    if u.shape != (state.mode_count, state.mode_count):
        raise ValueError(
            f"unitary of shape {u.shape} does not match {state.mode_count} modes"
        )
    basis = enumerate_basis(state.mode_count, state.photon_number, max_basis_size)
    out = np.zeros(len(basis), dtype=complex)
    for source, amp in state.sorted_items():
        if amp == 0:
            continue
        out += amp * transition_amplitudes(u, source, basis)
    kept = {
        occ: complex(a) for occ, a in zip(basis, out) if abs(a) >= PRUNE_TOLERANCE
    }
    return PhotonicState(kept, state.mode_count, state.photon_number)
