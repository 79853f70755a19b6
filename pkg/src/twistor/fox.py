"""Free-group words on {a, b} and Fox free derivatives.

Letters are encoded as ints: 1 = a, -1 = a^{-1}, 2 = b, -2 = b^{-1}.
Words are freely reduced tuples.  A group-ring element of Z[F_2] is a dict
mapping words to nonzero integer coefficients.

The derivative follows the product rule d(uv) = du + u dv with
d(g^{-1}) = -g^{-1} dg on letters.
"""

from __future__ import annotations

A, B = 1, 2

W_WORD = (A, -B, -A, B)          # w = a b^-1 a^-1 b
WBAR_WORD = (B, -A, -B, A)       # wbar = b a^-1 b^-1 a


def reduce_word(letters) -> tuple:
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word) -> tuple:
    return tuple(-x for x in reversed(word))


def word_power(word, n: int) -> tuple:
    if n < 0:
        word, n = invert_word(word), -n
    return reduce_word(word * n)


def relator_word(n: int) -> tuple:
    """The defining relation a w^n b^{-1} w^{-n} of the twist-knot group."""
    wn = word_power(W_WORD, n)
    return reduce_word((A,) + wn + (-B,) + invert_word(wn))


def longitude_word(n: int) -> tuple:
    """lambda_a = wbar^n w^n."""
    return reduce_word(word_power(WBAR_WORD, n) + word_power(W_WORD, n))


def fox_derivative(word, gen: int) -> dict:
    """d(word)/d(gen) in Z[F_2], gen in {1, 2}."""
    out: dict = {}

    def add(key, c):
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    prefix: tuple = ()
    for x in word:
        if x == gen:
            add(prefix, 1)
        elif x == -gen:
            add(reduce_word(prefix + (x,)), -1)
        prefix = reduce_word(prefix + (x,))
    return out


def evaluate_word(word, images):
    """Product of generator images over a word; ``images`` maps ±1, ±2 to
    matrices and must contain an "identity" entry under key 0."""
    acc = images[0]
    for x in word:
        acc = acc * images[x]
    return acc


def evaluate_group_ring(elem: dict, images):
    """Evaluate a Z[F_2] element through a matrix representation."""
    acc = None
    for word, coeff in elem.items():
        term = evaluate_word(word, images) * coeff
        acc = term if acc is None else acc + term
    return acc if acc is not None else images[0] * 0
