"""Brute-force reference values, independent of the closed forms.

Two oracles live here. The projective oracle maximizes the entropy drop of A
over two-outcome projective measurements on the qubit B, a lower bound on the
POVM-defined classical correlation. The decomposition oracle maximizes the
linear-entropy objective over sampled pure-state decompositions of rho_B
pushed through the extracted channel, a lower bound that the aligned
two-point decomposition brings up to the closed-form value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelBloch, bloch_state, extract_channel, gell_mann_basis
from .linalg import EIGENVALUE_CLAMP, PAULIS
from .measures import linear_entropy, mutual_information
from .states import DensityMatrix, trial_seed

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GridSpec:
    """Search schedule for the projective oracle.

    The coarse grid must be at least 64 x 32 in (theta, phi); the top cells
    are refined by per-coordinate golden-section descent.
    """

    n_theta: int = 64
    n_phi: int = 32
    refine_starts: int = 5
    max_rounds: int = 60
    angle_tol: float = 1e-10

    def __post_init__(self):
        if self.n_theta < 64 or self.n_phi < 32:
            raise ValueError(f"grid {self.n_theta}x{self.n_phi} below the 64x32 floor")


@dataclass(frozen=True)
class Decomposition:
    """Pure-state decomposition of a qubit marginal, as Bloch vectors."""

    probabilities: np.ndarray
    bloch_vectors: np.ndarray


def measurement_projectors(theta: float, phi: float):
    """Two-outcome projectors (I +- n.sigma)/2 along the (theta, phi) direction."""
    n = np.array(
        [
            math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta),
        ]
    )
    plus = (np.eye(2, dtype=complex) + sum(n[k] * PAULIS[k] for k in range(3))) / 2.0
    return plus, np.eye(2, dtype=complex) - plus


def _batched_entropy(matrices: np.ndarray, probs: np.ndarray) -> np.ndarray:
    """Entropies of unnormalized conditional states, zero where prob vanishes."""
    safe = np.where(probs > 1e-15, probs, 1.0)
    normalized = matrices / safe[:, None, None]
    lam = np.linalg.eigvalsh(normalized)
    lam = np.where(lam > EIGENVALUE_CLAMP, lam, 1.0)
    ent = -np.sum(lam * np.log2(lam), axis=1)
    return np.where(probs > 1e-15, ent, 0.0)


def _measurement_response(rho: DensityMatrix):
    """Precompute Tr_B[rho (I x sigma_k)] so conditionals are linear in n."""
    d_a = rho.dim_a
    r = rho.matrix.reshape(d_a, 2, d_a, 2)
    t_unit = np.einsum("abcb->ac", r)
    t_pauli = np.stack([np.einsum("abcd,db->ac", r, s) for s in PAULIS])
    return t_unit, t_pauli


def _entropy_drop_batch(t_unit, t_pauli, s_a, directions: np.ndarray) -> np.ndarray:
    """Objective S(rho_A) - sum_i p_i S(rho_A^i) for a batch of directions."""
    cond_plus = 0.5 * (
        t_unit[None, :, :] + np.einsum("nk,kij->nij", directions, t_pauli)
    )
    p_plus = np.einsum("naa->n", cond_plus).real
    cond_minus = t_unit[None, :, :] - cond_plus
    p_minus = 1.0 - p_plus
    return (
        s_a
        - p_plus * _batched_entropy(cond_plus, p_plus)
        - p_minus * _batched_entropy(cond_minus, p_minus)
    )


def _branch_entropy_qubit(m, prob: float) -> float:
    """prob * S(m / prob) for an unnormalized 2x2 Hermitian conditional."""
    if prob <= 1e-15:
        return 0.0
    det = (m[0, 0].real * m[1, 1].real - (m[0, 1] * m[1, 0]).real) / (prob * prob)
    lam = 0.5 + math.sqrt(max(0.25 - det, 0.0))
    if lam >= 1.0:
        return 0.0
    return prob * (-lam * math.log2(lam) - (1.0 - lam) * math.log2(1.0 - lam))


def _directions(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    st, ct = np.sin(thetas), np.cos(thetas)
    return np.column_stack([st * np.cos(phis), st * np.sin(phis), ct])


def _golden_max(fun, lo: float, hi: float, tol: float):
    """Golden-section maximization on [lo, hi] down to bracket width tol."""
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fun(x1), fun(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = fun(x1)
    return ((x1, f1) if f1 >= f2 else (x2, f2))


def projective_classical_correlation(rho: DensityMatrix, grid: GridSpec = None) -> float:
    """Best entropy drop of A over two-outcome projective measurements on B.

    Coarse grid scan, then coordinate descent from the best cells. The result
    is a certified lower bound on the POVM maximum.
    """
    if rho.dim_b != 2:
        raise ValueError(f"measurement side B must be a qubit, got dims {rho.dims}")
    grid = grid or GridSpec()
    d_a = rho.dim_a
    t_unit, t_pauli = _measurement_response(rho)
    lam_a = np.linalg.eigvalsh(t_unit).real
    lam_a = lam_a[lam_a > EIGENVALUE_CLAMP]
    s_a = float(-np.sum(lam_a * np.log2(lam_a))) + 0.0

    thetas = (np.arange(grid.n_theta) + 0.5) * math.pi / grid.n_theta
    phis = (np.arange(grid.n_phi) + 0.5) * 2.0 * math.pi / grid.n_phi
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    points = np.column_stack([tt.ravel(), pp.ravel()])
    values = _entropy_drop_batch(
        t_unit, t_pauli, s_a, _directions(points[:, 0], points[:, 1])
    )

    if d_a == 2:

        def objective(theta, phi):
            st = math.sin(theta)
            n = (st * math.cos(phi), st * math.sin(phi), math.cos(theta))
            plus = 0.5 * (
                t_unit + n[0] * t_pauli[0] + n[1] * t_pauli[1] + n[2] * t_pauli[2]
            )
            p_plus = plus[0, 0].real + plus[1, 1].real
            return (
                s_a
                - _branch_entropy_qubit(plus, p_plus)
                - _branch_entropy_qubit(t_unit - plus, 1.0 - p_plus)
            )

    else:

        def objective(theta, phi):
            return float(
                _entropy_drop_batch(
                    t_unit, t_pauli, s_a,
                    _directions(np.array([theta]), np.array([phi])),
                )[0]
            )

    best = float(np.max(values))
    w_theta = math.pi / grid.n_theta
    w_phi = 2.0 * math.pi / grid.n_phi
    for idx in np.argsort(values)[::-1][: grid.refine_starts]:
        theta, phi = points[idx]
        value = float(values[idx])
        for _ in range(grid.max_rounds):
            previous = value
            new_theta, value = _golden_max(
                lambda t: objective(t, phi), theta - w_theta, theta + w_theta,
                grid.angle_tol,
            )
            new_phi, value = _golden_max(
                lambda f: objective(new_theta, f), phi - w_phi, phi + w_phi,
                grid.angle_tol,
            )
            moved = max(abs(new_theta - theta), abs(new_phi - phi))
            theta, phi = new_theta, new_phi
            if moved < grid.angle_tol or value - previous < 1e-14:
                break
        best = max(best, value)
    return best


def projective_discord(rho: DensityMatrix, grid: GridSpec = None) -> float:
    """Mutual information minus the projective oracle; upper-bounds the discord."""
    return mutual_information(rho) - projective_classical_correlation(rho, grid)


def _chord(r_b: np.ndarray, direction: np.ndarray) -> Decomposition:
    """Two-point decomposition along a chord of the Bloch sphere through r_b."""
    e = direction / np.linalg.norm(direction)
    b = float(np.dot(r_b, e))
    disc = math.sqrt(max(b * b + 1.0 - float(np.dot(r_b, r_b)), 0.0))
    t_plus, t_minus = -b + disc, -b - disc
    p_plus = -t_minus / (t_plus - t_minus)
    return Decomposition(
        probabilities=np.array([p_plus, 1.0 - p_plus]),
        bloch_vectors=np.stack([r_b + t_plus * e, r_b + t_minus * e]),
    )


def _mix(first: Decomposition, second: Decomposition, weight: float) -> Decomposition:
    return Decomposition(
        probabilities=np.concatenate(
            [weight * first.probabilities, (1.0 - weight) * second.probabilities]
        ),
        bloch_vectors=np.vstack([first.bloch_vectors, second.bloch_vectors]),
    )


def _random_unit(rng) -> np.ndarray:
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def random_decomposition(r_b: np.ndarray, size: int, rng) -> Decomposition:
    """Random pure-state decomposition of the marginal with 2, 3 or 4 elements."""
    if size == 2:
        return _chord(r_b, _random_unit(rng))
    if size == 3:
        u = _random_unit(rng)
        p1 = rng.uniform(0.0, 1.0) * (1.0 - float(np.linalg.norm(r_b))) / 2.0
        rest = _chord((r_b - p1 * u) / (1.0 - p1), _random_unit(rng))
        return Decomposition(
            probabilities=np.concatenate([[p1], (1.0 - p1) * rest.probabilities]),
            bloch_vectors=np.vstack([u, rest.bloch_vectors]),
        )
    if size == 4:
        first = _chord(r_b, _random_unit(rng))
        second = _chord(r_b, _random_unit(rng))
        return _mix(first, second, rng.uniform(0.2, 0.8))
    raise ValueError(f"decomposition size {size} not in {{2, 3, 4}}")


def aligned_decomposition(ch: ChannelBloch) -> Decomposition:
    """Chord along the top eigenvector of L^T L, which attains the closed form."""
    gram = ch.linear_part.T @ ch.linear_part
    _, vectors = np.linalg.eigh(gram)
    top = vectors[:, -1]
    lam = ch.marginal_eigenvalues
    r_b = np.array([0.0, 0.0, float(lam[0] - lam[1])])
    return _chord(r_b, top)


def _decomposition_objective(ch: ChannelBloch, r_b: np.ndarray, decomp: Decomposition) -> float:
    """S2 of the mixed output minus the average S2 of the pure-input outputs.

    Outputs are reconstructed as actual density matrices and fed to the
    linear-entropy function, rather than using the Bloch-norm shortcut.
    """
    basis = gell_mann_basis(ch.output_dim)
    mixed_out = bloch_state(ch.linear_part @ r_b + ch.offset, basis)
    value = linear_entropy(mixed_out)
    for p, r in zip(decomp.probabilities, decomp.bloch_vectors):
        pure_out = bloch_state(ch.linear_part @ r + ch.offset, basis)
        value -= float(p) * linear_entropy(pure_out)
    return value


def decomposition_linear_cc(rho: DensityMatrix, trials: int = 200, seed: int = 0) -> float:
    """Supremum of the linear-entropy objective over sampled decompositions.

    Includes the deterministic aligned chord, so the value matches the closed
    form to within rounding; random 2-, 3- and 4-element decompositions are
    drawn from per-(size, trial) substreams so larger trial counts extend
    smaller ones.
    """
    ch = extract_channel(rho)
    lam = ch.marginal_eigenvalues
    r_b = np.array([0.0, 0.0, float(lam[0] - lam[1])])
    best = _decomposition_objective(ch, r_b, aligned_decomposition(ch))
    for size in (2, 3, 4):
        for t in range(trials):
            rng = np.random.default_rng(trial_seed(seed, size, t))
            decomp = random_decomposition(r_b, size, rng)
            best = max(best, _decomposition_objective(ch, r_b, decomp))
    return best
