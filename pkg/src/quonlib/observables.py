"""Number/transition operators at q = 0 on a truncated free Fock space.

At q = 0 the Fock words over a finite mode set are orthonormal, an
annihilator only ever strips the leftmost letter, and the transition
operator has a simple (but infinite-degree) series

    n_kl = a†_k a_l + sum_t a†_t a†_k a_l a_t
         + sum_{t1,t2} a†_t2 a†_t1 a†_k a_l a_t1 a_t2 + ...

Truncated to depth D on a particle-capped space, the defining commutator

    [n_kl, a†_m] = delta_lm a†_k

holds exactly on every state at least one particle below the cap,
provided D >= cap - 1.  All arithmetic is exact integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .qfock import ANNIHILATOR, CREATOR


class TruncationError(RuntimeError):
    """An intermediate state exceeded the particle cap; deepen the truncation."""


class NonzeroQError(ValueError):
    """This module only implements the q = 0 series."""


def require_q_zero(q):
    if q != 0:
        raise NonzeroQError("transition-operator series is implemented for q=0 only")


@dataclass(frozen=True)
class TruncatedFockSpace:
    modes: tuple
    cap: int
    basis: tuple = field(init=False)

    def __post_init__(self):
        words = []
        for n in range(self.cap + 1):
            words.extend(itertools.product(self.modes, repeat=n))
        object.__setattr__(self, "basis", tuple(words))

    @property
    def dim(self):
        return len(self.basis)

    def states_below_cap(self):
        return [w for w in self.basis if len(w) < self.cap]


# States are dicts FockWord -> exact scalar (int or Fraction).


def _apply_symbol_q0(symbol, state, cap):
    kind, mode = symbol
    out = {}
    for w, c in state.items():
        if kind == CREATOR:
            if len(w) >= cap:
                raise TruncationError(
                    f"creator on a {len(w)}-particle word exceeds cap {cap}")
            nw = (mode,) + w
            out[nw] = out.get(nw, 0) + c
        else:
            # q=0: only a leftmost match survives (q^i vanishes for i > 0)
            if w and w[0] == mode:
                nw = w[1:]
                out[nw] = out.get(nw, 0) + c
    return {w: c for w, c in out.items() if c != 0}


def apply_terms_q0(terms, state, cap):
    """Apply a list of (operator word, scalar coefficient) terms at q = 0."""
    out = {}
    for word, coeff in terms:
        cur = state
        for symbol in reversed(word):
            cur = _apply_symbol_q0(symbol, cur, cap)
            if not cur:
                break
        for w, c in cur.items():
            out[w] = out.get(w, 0) + coeff * c
    return {w: c for w, c in out.items() if c != 0}


def transition_operator(k, l, depth, modes, q=0):
    """Truncated n_kl series as a list of (word, 1) terms over a finite
    mode set; depth-d terms carry d+1 creators and d+1 annihilators."""
    require_q_zero(q)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    terms = []
    for d in range(depth + 1):
        for ts in itertools.product(modes, repeat=d):
            word = tuple((CREATOR, t) for t in reversed(ts)) \
                + ((CREATOR, k), (ANNIHILATOR, l)) \
                + tuple((ANNIHILATOR, t) for t in ts)
            terms.append((word, 1))
    return terms


def _state_sub(a, b):
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, 0) - c
    return {w: c for w, c in out.items() if c != 0}


def commutator_residual(space, k, l, m, depth):
    """[n_kl, a†_m] - delta_lm a†_k applied to every basis state below the
    cap.  Returns a dict state -> residual (as a state dict); exact."""
    nkl = transition_operator(k, l, depth, space.modes)
    res = {}
    for w in space.states_below_cap():
        psi = {w: 1}
        up = _apply_symbol_q0((CREATOR, m), psi, space.cap)
        lhs = _state_sub(
            apply_terms_q0(nkl, up, space.cap),
            _apply_symbol_q0((CREATOR, m),
                             apply_terms_q0(nkl, psi, space.cap), space.cap))
        rhs = _apply_symbol_q0((CREATOR, k), psi, space.cap) if l == m else {}
        diff = _state_sub(lhs, rhs)
        if diff:
            res[w] = diff
    return res


def check_transition_commutator(space, k, l, m, depth):
    """Report for the defining commutator; exact=True means zero residual
    on every state below the cap."""
    if depth < space.cap - 1:
        raise ValueError("series depth too shallow for the particle cap")
    res = commutator_residual(space, k, l, m, depth)
    max_res = max((max(abs(c) for c in d.values()) for d in res.values()),
                  default=0)
    return {"k": k, "l": l, "m": m, "depth": depth,
            "exact": not res, "max_residual": max_res,
            "failing_states": sorted(res)}


def free_hamiltonian_terms(space, energies, depth=None, q=0):
    """H = sum_k eps_k n_k as explicit series terms."""
    require_q_zero(q)
    if depth is None:
        depth = space.cap - 1
    missing = [k for k in space.modes if k not in energies]
    if missing:
        raise ValueError(f"no energy given for modes {missing}")
    terms = []
    for k in space.modes:
        eps = Fraction(energies[k])
        terms.extend((word, eps * c)
                     for word, c in transition_operator(k, k, depth, space.modes))
    return terms


def check_free_hamiltonian(space, energies, depth=None):
    """H must act diagonally: H|w> = (sum of letter energies) |w>."""
    terms = free_hamiltonian_terms(space, energies, depth)
    failures = []
    for w in space.basis:
        got = apply_terms_q0(terms, {w: 1}, space.cap)
        want_e = sum(Fraction(energies[m]) for m in w)
        want = {w: want_e} if want_e != 0 else {}
        if _state_sub(got, want):
            failures.append(w)
    return {"exact": not failures, "failing_states": failures}


def locality_check_discrete(space, x, y, w, depth=None):
    """Discrete-mode locality: [n_xy, a†_w] = delta_yw a†_x on the capped
    space, and n_xy|0> = 0."""
    if depth is None:
        depth = space.cap - 1
    rep = check_transition_commutator(space, x, y, w, depth)
    nxy = transition_operator(x, y, depth, space.modes)
    vac_ok = not apply_terms_q0(nxy, {(): 1}, space.cap)
    return {"commutator": rep, "annihilates_vacuum": vac_ok,
            "exact": rep["exact"] and vac_ok}


def adjoint_pair_check(space, k, l, depth=None):
    """n_kl and n_lk are mutual adjoints in the q=0 inner product (Fock
    words orthonormal)."""
    if depth is None:
        depth = space.cap - 1
    nkl = transition_operator(k, l, depth, space.modes)
    nlk = transition_operator(l, k, depth, space.modes)
    for u in space.basis:
        a = apply_terms_q0(nkl, {u: 1}, space.cap)
        for v in space.basis:
            b = apply_terms_q0(nlk, {v: 1}, space.cap)
            if a.get(v, 0) != b.get(u, 0):
                return False
    return True
