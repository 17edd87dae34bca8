"""Brute-force oracles: codegrees, regularity, spectra and spectral-gap diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .graph import Graph

__all__ = [
    "CodegreeGuardError",
    "ConvergenceError",
    "SpectrumResult",
    "VerificationReport",
    "GapReport",
    "max_codegree",
    "is_kst_free",
    "check_regular",
    "jacobi_eigenvalues",
    "adjacency_spectrum",
    "laplacian_spectrum",
    "cayley_spectrum",
    "spectral_gap_report",
    "verify_graph",
]

BRUTE_FORCE_MAX_N = 64


class CodegreeGuardError(ValueError):
    """An exhaustive s-set scan was requested on a graph that is too large."""


class ConvergenceError(RuntimeError):
    pass


def max_codegree(G: Graph, s: int) -> int:
    """Largest number of common neighbours of any ``s`` distinct vertices.

    Loops never count as common neighbours.  ``G`` is K_{s,t}-free exactly when
    the result is at most ``t - 1``.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    n = G.n
    if n < s:
        return 0
    A = G.adjacency
    if s == 1:
        return int(A.sum(axis=1).max())
    if s == 2:
        Af = A.astype(np.float32)
        C = Af @ Af
        iu = np.triu_indices(n, 1)
        return int(round(float(C[iu].max())))
    if s == 3:
        Af = A.astype(np.float32)
        best = 0
        for i in range(n - 2):
            rows = Af[A[i]]  # neighbourhood of i
            if len(rows) <= best:
                continue
            sub = rows[:, i + 1 :]
            C = sub.T @ sub  # C[j, k] = codegree of {i, j, k}
            if len(C) < 2:
                continue
            iu = np.triu_indices(len(C), 1)
            best = max(best, int(round(float(C[iu].max()))))
        return best
    if n > BRUTE_FORCE_MAX_N:
        raise CodegreeGuardError(f"s={s} scans are limited to n <= {BRUTE_FORCE_MAX_N} (n={n})")
    masks = [sum(1 << int(w) for w in G.neighbors(v)) for v in range(n)]
    best = 0
    for combo in combinations(range(n), s):
        m = masks[combo[0]]
        for v in combo[1:]:
            m &= masks[v]
            if not m:
                break
        best = max(best, m.bit_count() if hasattr(m, "bit_count") else bin(m).count("1"))
    return best


def is_kst_free(G: Graph, s: int, t: int) -> bool:
    return max_codegree(G, s) <= t - 1


def check_regular(G: Graph) -> Optional[int]:
    """Common degree (loops counted once) or ``None`` if the degrees differ."""
    d = G.degrees
    if len(d) == 0:
        return 0
    return int(d[0]) if (d == d[0]).all() else None


# --- spectra ----------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray  # ascending
    method: str

    def __len__(self) -> int:
        return len(self.eigenvalues)

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[-1])

    def nontrivial_max_abs(self) -> float:
        """max |lambda| after removing the single largest eigenvalue."""
        if len(self.eigenvalues) < 2:
            return 0.0
        return float(np.abs(self.eigenvalues[:-1]).max())


def jacobi_eigenvalues(M: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by parallel-ordered cyclic Jacobi rotations.

    Each round rotates a set of disjoint index pairs (round-robin ordering), so a
    sweep costs n - 1 vectorised rounds.  Stops when the off-diagonal Frobenius
    norm drops below ``tol`` times the Frobenius norm of ``M``.
    """
    A = np.array(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(A, A.T):
        raise ValueError("matrix must be symmetric")
    n = len(A)
    if n <= 1:
        return np.sort(A.diagonal().copy())
    scale = max(np.linalg.norm(A), 1.0)
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)

    def off(A):
        # direct sum: ||A||^2 - ||diag||^2 cancels catastrophically near convergence
        return float(np.linalg.norm(A - np.diag(A.diagonal())))

    for _ in range(max_sweeps):
        if off(A) <= tol * scale:
            return np.sort(A.diagonal().copy())
        for _round in range(m - 1):
            pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
            pairs = [(min(a, b), max(a, b)) for a, b in pairs if a >= 0 and b >= 0]
            P = np.array([a for a, _ in pairs])
            Q = np.array([b for _, b in pairs])
            apq = A[P, Q]
            active = np.abs(apq) > 1e-150 * scale
            if active.any():
                P, Q, apq = P[active], Q[active], apq[active]
                theta = (A[Q, Q] - A[P, P]) / (2.0 * apq)
                t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                t[theta == 0] = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * c
                cols_p, cols_q = A[:, P].copy(), A[:, Q].copy()
                A[:, P] = cols_p * c - cols_q * sn
                A[:, Q] = cols_p * sn + cols_q * c
                rows_p, rows_q = A[P, :].copy(), A[Q, :].copy()
                A[P, :] = c[:, None] * rows_p - sn[:, None] * rows_q
                A[Q, :] = sn[:, None] * rows_p + c[:, None] * rows_q
            # rotate the round-robin schedule, keeping players[0] fixed
            players = [players[0], players[-1]] + players[1:-1]
    if off(A) <= tol * scale:
        return np.sort(A.diagonal().copy())
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def _eigvals(M: np.ndarray, method: str) -> np.ndarray:
    if method == "jacobi":
        return jacobi_eigenvalues(M)
    if method == "lapack":
        return np.sort(np.linalg.eigvalsh(M.astype(np.float64)))
    raise ValueError(f"unknown eigen method {method!r}")


def adjacency_spectrum(G: Graph, method: str = "lapack") -> SpectrumResult:
    """Eigenvalues of the 0/1 adjacency matrix with 1 on the diagonal at loops."""
    if G.n > 2000:
        raise ValueError("dense spectra are limited to n <= 2000")
    return SpectrumResult(_eigvals(G.adjacency_matrix(loops=True), method), "numeric")


def laplacian_spectrum(G: Graph, method: str = "lapack") -> SpectrumResult:
    if G.n > 2000:
        raise ValueError("dense spectra are limited to n <= 2000")
    return SpectrumResult(_eigvals(G.laplacian(), method), "numeric")


def cayley_spectrum(group, S: Iterable) -> SpectrumResult:
    """Spectrum of the Cayley sum graph (loops kept) from additive character sums.

    A real character contributes chi(S); each conjugate pair {chi_b, chi_-b}
    contributes +|chi_b(S)| and -|chi_b(S)|.
    """
    orders = np.array(group.cyclic_orders, dtype=np.int64)
    if group.order > 5000:
        raise ValueError("group too large for the character-sum spectrum")
    chars = group.element_array()  # every b, in index order
    S = np.array([group.normalize(s) for s in S], dtype=np.int64).reshape(-1, len(orders))
    if len(S) == 0:
        return SpectrumResult(np.zeros(group.order), "character_sum")
    phase = (chars[:, None, :] * S[None, :, :] / orders).sum(axis=2)
    values = np.exp(2j * np.pi * phase).sum(axis=1)
    neg_index = group.index_array((-chars) % orders)
    eig = []
    for b in range(group.order):
        partner = int(neg_index[b])
        if partner == b:
            eig.append(values[b].real)
        elif b < partner:
            eig.extend([abs(values[b]), -abs(values[b])])
    return SpectrumResult(np.sort(np.array(eig)), "character_sum")


@dataclass(frozen=True)
class GapReport:
    average_degree: float
    max_gap: float  # max over nonzero-index Laplacian eigenvalues of |d - mu_i|
    bound: Optional[float]
    within_bound: Optional[bool]
    butler_chung_ratio: Optional[float]

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def spectral_gap_report(G: Graph, j: int = 0, q: Optional[int] = None, s: Optional[int] = None) -> GapReport:
    """Laplacian spread around the average degree.

    With norm-graph parameters ``q, s`` the measured spread is compared with
    q^{s/2} + 1 + 6j.  The Butler-Chung ratio divides the spread by
    d (log log n)^2 / (log n log log log n); it is informational only.
    """
    if not G.is_connected():
        raise ValueError("graph is disconnected")
    n = G.n
    d = float(G.adjacency.sum()) / n
    mu = laplacian_spectrum(G).eigenvalues
    gap = float(np.abs(d - mu[1:]).max()) if n > 1 else 0.0
    bound = None if q is None or s is None else q ** (s / 2) + 1 + 6 * j
    ratio = None
    if n > 16:
        lg = math.log(n)
        llg = math.log(lg)
        lllg = math.log(llg)
        if lllg > 0 and d > 0:
            ratio = gap / (d * llg**2 / (lg * lllg))
    return GapReport(d, gap, bound, None if bound is None else gap <= bound, ratio)


# --- reports ----------------------------------------------------------------

def _g12(x: float) -> float:
    return float(f"{x:.12g}")


@dataclass
class VerificationReport:
    n: int
    edge_count: int
    loop_count: int
    regular_degree: Optional[int]
    degree_histogram: dict
    max_codegree: dict = field(default_factory=dict)
    freeness: dict = field(default_factory=dict)
    spectral: Optional[dict] = None
    bound_comparison: Optional[dict] = None
    skipped: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "schema": 1,
            "n": self.n,
            "edge_count": self.edge_count,
            "loop_count": self.loop_count,
            "regular_degree": self.regular_degree,
            "degree_histogram": {str(k): v for k, v in sorted(self.degree_histogram.items())},
            "max_codegree": {str(k): v for k, v in sorted(self.max_codegree.items())},
            "freeness": {f"{s},{t}": v for (s, t), v in sorted(self.freeness.items())},
            "skipped": list(self.skipped),
        }
        if self.spectral is not None:
            out["spectral"] = {k: (_g12(v) if isinstance(v, float) else v) for k, v in self.spectral.items()}
        if self.bound_comparison is not None:
            out["bound_comparison"] = {
                k: (_g12(v) if isinstance(v, float) else v) for k, v in self.bound_comparison.items()
            }
        return out


def verify_graph(
    G: Graph,
    free: Sequence[tuple[int, int]] = (),
    spectra: bool = False,
    codegree_cap: int = 1000,
) -> VerificationReport:
    """Collect regularity, codegree/freeness and (optionally) spectral findings.

    ``codegree_cap`` bounds n for triple scans; larger graphs are listed in
    ``skipped`` instead of being scanned.
    """
    report = VerificationReport(
        n=G.n,
        edge_count=G.edge_count,
        loop_count=G.loop_count,
        regular_degree=check_regular(G),
        degree_histogram=G.degree_histogram(),
    )
    for s, t in free:
        if s not in report.max_codegree:
            too_big = (s == 3 and G.n > codegree_cap) or (s >= 4 and G.n > BRUTE_FORCE_MAX_N)
            if too_big:
                report.skipped.append(f"codegree s={s}")
                continue
            report.max_codegree[s] = max_codegree(G, s)
        report.freeness[(s, t)] = report.max_codegree[s] <= t - 1
    if spectra and G.n <= 2000:
        adj = adjacency_spectrum(G).eigenvalues
        lap = laplacian_spectrum(G).eigenvalues
        zero_mult = int((np.abs(lap) < 1e-8).sum())
        report.spectral = {
            "adjacency_max": float(adj[-1]),
            "adjacency_nontrivial_max_abs": float(np.abs(adj[:-1]).max()) if len(adj) > 1 else 0.0,
            "laplacian_max": float(lap[-1]),
            "laplacian_second_smallest": float(lap[1]) if len(lap) > 1 else 0.0,
            "laplacian_zero_multiplicity": zero_mult,
        }
    return report
