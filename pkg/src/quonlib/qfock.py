"""Normal-ordering engine and free Fock-space action for the quon algebra.

The single defining relation is

    a_k a†_l  =  delta_kl + q a†_l a_k

with no relation at all between two creators or two annihilators.
Everything here is exact: coefficients live in the polynomial ring QPoly.

Conventions
-----------
* An operator word is a tuple of (kind, mode) pairs, kind "c" for a
  creator and "a" for an annihilator, written left to right in
  matrix-element order (the leftmost symbol acts last on a ket).
* A Fock word (j1, ..., jn) stands for the state a†_j1 ... a†_jn |0>.
  A creator prepends its label; the annihilator acting on position i
  (0-based) picks up the coefficient q^i.
"""

from __future__ import annotations

from .qpoly import QPoly

CREATOR = "c"
ANNIHILATOR = "a"

# OperatorWord: tuple[tuple[str, int], ...]
# FockWord: tuple[int, ...]
# OperatorSum / State: dict mapping word -> QPoly, no zero values stored.


def creator(mode):
    return (CREATOR, int(mode))


def annihilator(mode):
    return (ANNIHILATOR, int(mode))


def parse_word(text):
    """Parse the word grammar: whitespace-separated `c<INT>` / `a<INT>` tokens."""
    symbols = []
    for tok in text.split():
        kind, num = tok[0], tok[1:]
        if kind not in (CREATOR, ANNIHILATOR) or not num.lstrip("-").isdigit():
            raise ValueError(f"bad operator token {tok!r}")
        mode = int(num)
        if mode < 0:
            raise ValueError(f"negative mode in token {tok!r}")
        symbols.append((kind, mode))
    return tuple(symbols)


def format_word(word):
    return " ".join(f"{kind}{mode}" for kind, mode in word)


def _add_term(acc, word, coeff):
    cur = acc.get(word)
    new = coeff if cur is None else cur + coeff
    if new.is_zero():
        acc.pop(word, None)
    else:
        acc[word] = new


def _first_ac_adjacency(word):
    for i in range(len(word) - 1):
        if word[i][0] == ANNIHILATOR and word[i + 1][0] == CREATOR:
            return i
    return -1


def normal_order(word):
    """Rewrite a word so every creator stands left of every annihilator.

    Returns an OperatorSum exactly equal to the input modulo the defining
    relation.  Terminates because each rewrite strictly reduces the number
    of (annihilator, creator) inversions.
    """
    q = QPoly.q()
    one = QPoly.one()
    pending = {tuple(word): one}
    done = {}
    while pending:
        w, c = pending.popitem()
        i = _first_ac_adjacency(w)
        if i < 0:
            _add_term(done, w, c)
            continue
        (_, k), (_, l) = w[i], w[i + 1]
        swapped = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
        _add_term(pending, swapped, c * q)
        if k == l:
            _add_term(pending, w[:i] + w[i + 2:], c)
    return done


def vacuum_expectation(word, _memo=None):
    """<0| word |0> as an exact polynomial in q.

    Computed by the same rewriting as normal_order, keeping only branches
    that can still reach the empty word.
    """
    word = tuple(word)
    if _memo is None:
        _memo = {}
    cached = _memo.get(word)
    if cached is not None:
        return cached
    if not word:
        result = QPoly.one()
    elif word[0][0] == CREATOR or word[-1][0] == ANNIHILATOR:
        # a surviving creator on the left (or annihilator on the right)
        # can never be removed by the rewriting
        result = QPoly.zero()
    else:
        i = _first_ac_adjacency(word)
        (_, k), (_, l) = word[i], word[i + 1]
        swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
        result = QPoly.q() * vacuum_expectation(swapped, _memo)
        if k == l:
            result = result + vacuum_expectation(word[:i] + word[i + 2:], _memo)
    _memo[word] = result
    return result


# -- free Fock-space action ------------------------------------------------


def apply_annihilator(k, fock_word):
    """a_k acting on a Fock word: sum over positions i with label k of
    q^i times the word with that letter removed."""
    k = int(k)
    out = {}
    for i, label in enumerate(fock_word):
        if label == k:
            _add_term(out, fock_word[:i] + fock_word[i + 1:], QPoly.monomial(i))
    return out


def apply_creator(k, fock_word):
    return {(int(k),) + tuple(fock_word): QPoly.one()}


def apply_symbol_to_state(symbol, state):
    kind, mode = symbol
    out = {}
    for w, c in state.items():
        if kind == CREATOR:
            _add_term(out, (mode,) + w, c)
        else:
            for i, label in enumerate(w):
                if label == mode:
                    _add_term(out, w[:i] + w[i + 1:], c * QPoly.monomial(i))
    return out


def apply_word_to_state(word, state):
    """Apply an operator word to a state dict (rightmost symbol acts first)."""
    for symbol in reversed(word):
        state = apply_symbol_to_state(symbol, state)
    return state


def q_inner_product(u, v):
    """<u, v> for Fock words, via the annihilator action on |v>.

    Equals the vacuum expectation of a_{u_n} ... a_{u_1} a†_{v_1} ... a†_{v_n};
    zero whenever the label multisets differ.
    """
    u, v = tuple(u), tuple(v)
    if len(u) != len(v) or sorted(u) != sorted(v):
        return QPoly.zero()
    state = {v: QPoly.one()}
    for m in u:
        state = apply_symbol_to_state((ANNIHILATOR, m), state)
        if not state:
            return QPoly.zero()
    return state.get((), QPoly.zero())


def vev_word_for_inner_product(u, v):
    """The operator word whose vacuum expectation equals <u, v>."""
    return tuple((ANNIHILATOR, m) for m in reversed(tuple(u))) + \
        tuple((CREATOR, m) for m in v)
