"""Finite matrix realizations of order-p parastatistics.

The para-operators are sums of p component operators,

    a_k = sum_alpha b_k^(alpha),

where same-component operators are ordinary Bose (parabose) or Fermi
(parafermi) oscillators and distinct components anticommute (parabose)
or commute (parafermi).  The anomalous cross relations are installed
with diagonal sign chains (Klein construction) on a tensor-product
component space, so everything is an explicit matrix.

Parafermi realizations are exact integer matrices; parabose components
are truncated oscillators, and checks only assert on "protected" states
that cannot touch the cap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

DIM_BUDGET = 4096


class DimensionBudgetError(ValueError):
    pass


def _site_ops(levels):
    """Lowering operator and parity sign for one oscillator site."""
    b = np.zeros((levels, levels))
    for n in range(1, levels):
        b[n - 1, n] = math.sqrt(n)
    parity = np.diag([(-1.0) ** n for n in range(levels)])
    return b, parity


def _embed(op, site, nsites, levels):
    """Place a single-site operator at `site` in the tensor product
    (site 0 is the leftmost kron factor)."""
    eye = np.eye(levels)
    out = np.array([[1.0]])
    for i in range(nsites):
        out = np.kron(out, op if i == site else eye)
    return out


@dataclass(frozen=True)
class GreenRealization:
    kind: str               # "parabose" | "parafermi"
    order: int              # p
    modes: int              # M
    cap: int                # per-site occupancy cap (1 for parafermi)
    dim: int
    annihilators: dict = field(repr=False)   # mode -> matrix of a_k
    components: dict = field(repr=False)     # (alpha, mode) -> matrix
    number_ops: dict = field(repr=False)     # site -> occupancy diagonal
    vacuum: np.ndarray = field(repr=False)

    def creator(self, k):
        return self.annihilators[k].conj().T

    def protected_mask(self, headroom):
        """Basis states whose every site occupancy is at least `headroom`
        below the cap (immune to truncation over `headroom` creations)."""
        ok = np.ones(self.dim, dtype=bool)
        for nop in self.number_ops.values():
            ok &= np.diag(nop) <= self.cap - headroom
        return ok


def build_green(kind, p, modes, cap=None):
    """Explicit Green-ansatz matrices on the component tensor space."""
    if kind not in ("parabose", "parafermi"):
        raise ValueError(f"kind must be parabose or parafermi, got {kind!r}")
    if p < 1 or modes < 1:
        raise ValueError("order and mode count must be >= 1")
    if kind == "parafermi":
        cap = 1
    elif cap is None or cap < 1:
        raise ValueError("parabose realizations need a positive cap")
    levels = cap + 1
    nsites = p * modes
    dim = levels ** nsites
    if dim > DIM_BUDGET:
        raise DimensionBudgetError(
            f"dimension {dim} exceeds budget {DIM_BUDGET}")

    def site(alpha, k):
        return alpha * modes + k

    low, parity = _site_ops(levels)
    raw = {(alpha, k): _embed(low, site(alpha, k), nsites, levels)
           for alpha in range(p) for k in range(modes)}
    parities = {(alpha, k): _embed(parity, site(alpha, k), nsites, levels)
                for alpha in range(p) for k in range(modes)}

    components = {}
    for alpha in range(p):
        for k in range(modes):
            op = raw[(alpha, k)]
            if kind == "parafermi":
                # string over earlier modes of the same component:
                # same-component pairs anticommute, cross-component commute
                for k2 in range(k):
                    op = parities[(alpha, k2)] @ op
            else:
                # string over all sites of earlier components:
                # distinct components anticommute, same component stays Bose
                for beta in range(alpha):
                    for k2 in range(modes):
                        op = parities[(beta, k2)] @ op
            components[(alpha, k)] = op

    annihilators = {k: sum(components[(alpha, k)] for alpha in range(p))
                    for k in range(modes)}
    number_ops = {(alpha, k): _embed(np.diag(np.arange(levels, dtype=float)),
                                     site(alpha, k), nsites, levels)
                  for alpha in range(p) for k in range(modes)}
    vacuum = np.zeros(dim)
    vacuum[0] = 1.0
    return GreenRealization(kind=kind, order=p, modes=modes, cap=cap, dim=dim,
                            annihilators=annihilators, components=components,
                            number_ops=number_ops, vacuum=vacuum)


def _comm(a, b):
    return a @ b - b @ a


def _acomm(a, b):
    return a @ b + b @ a


def check_trilinear(r, tol=1e-10):
    """Trilinear relation [[a†_k, a_l]_±, a†_m]_- = 2 delta_lm a†_k.

    Inner bracket: anticommutator for parabose, commutator for parafermi.
    Parafermi holds as an exact matrix identity; parabose is asserted on
    protected states only.
    """
    inner = _acomm if r.kind == "parabose" else _comm
    mask = r.protected_mask(headroom=2) if r.kind == "parabose" else \
        np.ones(r.dim, dtype=bool)
    worst = 0.0
    for k, l, m in itertools.product(range(r.modes), repeat=3):
        t = _comm(inner(r.creator(k), r.annihilators[l]), r.creator(m))
        if l == m:
            t = t - 2 * r.creator(k)
        worst = max(worst, float(np.abs(t[:, mask]).max(initial=0.0)))
    return {"kind": r.kind, "p": r.order, "modes": r.modes,
            "max_residual": worst, "exact": worst <= tol,
            "protected_only": r.kind == "parabose"}


def check_vacuum_conditions(r, tol=1e-10):
    """a_k|0> = 0 exactly, and measure c in a_k a†_l |0> = c delta_kl |0>.

    The Green ansatz gives c = p on the component tensor vacuum; the
    constant is reported, not asserted.
    """
    kill = max(float(np.abs(r.annihilators[k] @ r.vacuum).max())
               for k in range(r.modes))
    consts = {}
    off = 0.0
    for k in range(r.modes):
        for l in range(r.modes):
            v = r.annihilators[k] @ (r.creator(l) @ r.vacuum)
            if k == l:
                consts[k] = float(v @ r.vacuum)
                off = max(off, float(np.abs(v - consts[k] * r.vacuum).max()))
            else:
                off = max(off, float(np.abs(v).max()))
    return {"annihilates_vacuum": kill <= tol,
            "one_particle_constant": consts,
            "off_diagonal_residual": off,
            "pass": kill <= tol and off <= tol}


def _projected_state(r, word, symmetric, creators=None):
    """(Anti)symmetrized product of creators applied to the vacuum."""
    if creators is None:
        creators = {k: r.creator(k) for k in set(word)}
    n = len(word)
    out = np.zeros(r.dim)
    for perm in itertools.permutations(range(n)):
        sgn = 1.0 if symmetric else (-1.0) ** _perm_inversions(perm)
        v = r.vacuum
        for i in reversed(perm):
            v = creators[word[i]] @ v
        out = out + sgn * v
    return out / math.factorial(n)


def _perm_inversions(perm):
    return sum(perm[i] > perm[j]
               for i in range(len(perm)) for j in range(i + 1, len(perm)))


def max_occupancy(r, word, symmetric=True, creators=None):
    """Squared norm of the (anti)symmetrized creator word on the vacuum.

    For parafermions the symmetric norm must vanish once more than p
    particles share a symmetric state; parabosons are the antisymmetric
    dual.
    """
    v = _projected_state(r, tuple(word), symmetric, creators)
    return float(v @ v)


def gentile_demo(theta, n_max=2):
    """Occupancy-capped (Gentile) statistics is basis dependent; the
    parafermi p=2 exclusion is not.

    In the two-mode, three-particle Bose sector with occupancy bound
    n_max=2, the state with all three quanta in one rotated mode has
    nonzero projection onto the allowed occupancy patterns unless the
    rotation is trivial.  By contrast the symmetric three-particle sector
    of a parafermi p=2 realization is annihilated in every basis.
    """
    if n_max != 2:
        raise ValueError("demo is stated for occupancy bound 2")
    c, s = math.cos(theta), math.sin(theta)
    # product basis of three distinguishable-slot copies of C^2
    u = np.array([c, s])
    state = np.kron(np.kron(u, u), u)
    forbidden = 0.0
    for pattern in ((0, 0, 0), (1, 1, 1)):   # occupancy 3 in one mode
        idx = pattern[0] * 4 + pattern[1] * 2 + pattern[2]
        forbidden += state[idx] ** 2
    allowed = float(state @ state) - forbidden

    # parafermi p=2 contrast, in the rotated single-particle basis
    r = build_green("parafermi", 2, 2)
    rot = {0: c * r.creator(0) + s * r.creator(1),
           1: -s * r.creator(0) + c * r.creator(1)}
    sym_norms = {w: max_occupancy(r, w, symmetric=True, creators=rot)
                 for w in itertools.combinations_with_replacement((0, 1), 3)}
    return {"theta": theta,
            "gentile_allowed_norm_sq": allowed,
            "gentile_forbidden_norm_sq": float(forbidden),
            "parafermi_symmetric_norms": sym_norms,
            "parafermi_sector_vanishes":
                max(sym_norms.values()) <= 1e-10}
