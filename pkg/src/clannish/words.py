"""Words over a presentation: the total order, admissibility predicates,
symmetry classification, and enumeration of strings and bands.

A word is a signed chain of letters (direct/inverse ordinary letters and
self-inverse star letters).  Three shapes appear: finite, right-infinite
eventually periodic (for suffix/prefix-inverse views of bands), and
Z-indexed periodic.  Comparisons between eventually periodic words are
decided on a finite horizon past which both sides are in periodic lock-step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    NonConcatenable,
    NotComparable,
    NotStarLetter,
    NotSymmetric,
)
from .presentation import Letter

SYMMETRY = "symmetry"
NATURALLY_DIRECT = "direct"
NATURALLY_INVERSE = "inverse"


@dataclass(frozen=True)
class Word:
    shape: str  # 'finite' | 'right' | 'zper'
    v0: str
    eps: int
    letters: tuple = ()  # finite: all letters; right: the prefix; zper: unused
    period: tuple = ()  # right: repeating block; zper: block w_1..w_m

    @property
    def is_finite(self):
        return self.shape == "finite"

    @property
    def is_periodic(self):
        return self.shape == "zper"

    def length(self):
        if self.shape != "finite":
            return None
        return len(self.letters)

    def period_length(self):
        return len(self.period)

    def letter_at(self, i):
        """w_i, or None when i is outside the index set."""
        if self.shape == "finite":
            return self.letters[i - 1] if 1 <= i <= len(self.letters) else None
        if self.shape == "right":
            if i < 1:
                return None
            k = len(self.letters)
            if i <= k:
                return self.letters[i - 1]
            return self.period[(i - k - 1) % len(self.period)]
        return self.period[(i - 1) % len(self.period)]

    def __repr__(self):
        if self.shape == "finite":
            body = "".join(repr(l) for l in self.letters) or f"1_({self.v0},{self.eps:+d})"
            return body
        if self.shape == "right":
            return "".join(repr(l) for l in self.letters) + "(" + "".join(repr(l) for l in self.period) + ")^inf"
        return "inf(" + "".join(repr(l) for l in self.period) + ")inf"


def trivial_word(pres, vertex, eps):
    return Word("finite", vertex, eps, ())


def finite_word(pres, v0, eps, letters, check=True):
    w = Word("finite", v0, eps, tuple(letters))
    if check:
        validate_word(pres, w)
    return w


def periodic_word(pres, block, check=True):
    block = tuple(block)
    w = Word("zper", pres.head(block[0]), pres.sign(block[0]), (), block)
    if check:
        validate_word(pres, w)
    return w


def right_word(pres, v0, eps, prefix, block, check=True):
    w = Word("right", v0, eps, tuple(prefix), tuple(block))
    if check:
        validate_word(pres, w)
    return w


def vertex_at(pres, w, i):
    """v_i(w)."""
    if i == 0 or (w.shape == "finite" and not w.letters):
        return w.v0
    if i > 0 or w.shape == "zper":
        letter = w.letter_at(i if i > 0 else i)
        if letter is None:
            raise IndexError(f"index {i} outside the word")
        return pres.tail(letter)
    raise IndexError(f"index {i} outside the word")


def _chain_ok(pres, x, y):
    """Conditions for y to follow x: vertices chain, signs alternate."""
    return pres.tail(x) == pres.head(y) and pres.sign(x.inverse()) == -pres.sign(y)


def validate_word(pres, w):
    if w.eps not in (1, -1):
        raise NonConcatenable("sign must be +-1")
    if w.shape == "finite":
        seq = w.letters
        if seq:
            if pres.head(seq[0]) != w.v0 or pres.sign(seq[0]) != w.eps:
                raise NonConcatenable("first letter disagrees with head vertex or sign")
            for x, y in zip(seq, seq[1:]):
                if not _chain_ok(pres, x, y):
                    raise NonConcatenable(f"letters {x!r},{y!r} do not chain")
        return w
    if w.shape == "right":
        if not w.period:
            raise NonConcatenable("right-infinite word needs a nonempty period")
        seq = list(w.letters) + list(w.period) + [w.period[0]]
        if pres.head(seq[0]) != w.v0 or pres.sign(seq[0]) != w.eps:
            raise NonConcatenable("first letter disagrees with head vertex or sign")
        for x, y in zip(seq, seq[1:]):
            if not _chain_ok(pres, x, y):
                raise NonConcatenable(f"letters {x!r},{y!r} do not chain")
        return w
    if w.shape == "zper":
        block = w.period
        if not block:
            raise NonConcatenable("periodic word needs a nonempty block")
        for j in range(len(block)):
            x, y = block[j], block[(j + 1) % len(block)]
            if not _chain_ok(pres, x, y):
                raise NonConcatenable(f"letters {x!r},{y!r} do not chain cyclically")
        return w
    raise NonConcatenable(f"unknown word shape {w.shape!r}")


# -- elementary operations ---------------------------------------------------


def invert_word(pres, w):
    if w.shape == "finite":
        if not w.letters:
            return Word("finite", w.v0, -w.eps, ())
        letters = tuple(l.inverse() for l in reversed(w.letters))
        v0 = pres.tail(w.letters[-1])
        return Word("finite", v0, pres.sign(letters[0]), letters)
    if w.shape == "zper":
        m = len(w.period)
        block = tuple(w.period[(-j - 2) % m].inverse() for j in range(m))
        return Word("zper", pres.head(block[0]), pres.sign(block[0]), (), block)
    raise NonConcatenable("cannot invert a one-sided infinite word")


def shift_word(pres, w, d):
    if w.shape != "zper":
        return w
    m = len(w.period)
    block = tuple(w.period[(d + j) % m] for j in range(m))
    return Word("zper", pres.head(block[0]), pres.sign(block[0]), (), block)


def concat_words(pres, u, w):
    """u then w; valid when u^-1 and w share head and have opposite signs."""
    if u.shape != "finite":
        raise NonConcatenable("left factor must be finite")
    ui = invert_word(pres, u)
    if ui.v0 != w.v0 or ui.eps != -w.eps:
        raise NonConcatenable("endpoint or sign mismatch")
    if w.shape == "finite":
        if not u.letters:
            return w
        return Word("finite", u.v0, u.eps, u.letters + w.letters)
    if w.shape == "right":
        if not u.letters:
            return w
        return Word("right", u.v0, u.eps, u.letters + w.letters, w.period)
    raise NonConcatenable("cannot concatenate onto a two-sided word")


def suffix(pres, w, i):
    """The word w_{>i}."""
    if w.shape == "finite":
        n = len(w.letters)
        if not 0 <= i <= n:
            raise IndexError(f"index {i} outside the word")
        letters = w.letters[i:]
        if letters:
            eps = pres.sign(letters[0])
        elif i >= 1:
            eps = -pres.sign(w.letters[i - 1].inverse())
        else:
            eps = w.eps
        return Word("finite", vertex_at(pres, w, i), eps, letters)
    if w.shape == "zper":
        m = len(w.period)
        block = tuple(w.period[(i + j) % m] for j in range(m))
        return Word("right", vertex_at(pres, w, i), pres.sign(block[0]), (), block)
    # right-infinite
    k = len(w.letters)
    if i < 0:
        raise IndexError("negative index on a right-infinite word")
    if i <= k:
        prefix = w.letters[i:]
        block = w.period
    else:
        prefix = ()
        s = (i - k) % len(w.period)
        block = tuple(w.period[(s + j) % len(w.period)] for j in range(len(w.period)))
    first = prefix[0] if prefix else block[0]
    return Word("right", vertex_at(pres, w, i), pres.sign(first), prefix, block)


def prefix_inverse(pres, w, i):
    """The word (w_{<=i})^{-1}."""
    if w.shape == "finite":
        n = len(w.letters)
        if not 0 <= i <= n:
            raise IndexError(f"index {i} outside the word")
        letters = tuple(w.letters[j].inverse() for j in range(i - 1, -1, -1))
        eps = pres.sign(letters[0]) if letters else -w.eps
        return Word("finite", vertex_at(pres, w, i), eps, letters)
    if w.shape == "zper":
        m = len(w.period)
        block = tuple(w.period[(i - 1 - j) % m].inverse() for j in range(m))
        return Word("right", vertex_at(pres, w, i), pres.sign(block[0]), (), block)
    # right-infinite: w_{<=i} is finite
    if i < 0:
        raise IndexError("negative index on a right-infinite word")
    letters = tuple(w.letter_at(j).inverse() for j in range(i, 0, -1))
    eps = pres.sign(letters[0]) if letters else -w.eps
    return Word("finite", vertex_at(pres, w, i), eps, letters)


# -- admissibility -----------------------------------------------------------


def _relation_patterns(pres):
    pats = set()
    for r in pres.zero_relations:
        fwd = tuple(
            Letter("s", a) if a in pres.special else Letter("d", a) for a in r
        )
        bwd = tuple(l.inverse() for l in reversed(fwd))
        pats.add(fwd)
        pats.add(bwd)
    return pats


def _contains_pattern(seq, pats):
    if not pats:
        return False
    maxlen = max(len(p) for p in pats)
    for i in range(len(seq)):
        for k in range(2, maxlen + 1):
            if i + k <= len(seq) and tuple(seq[i : i + k]) in pats:
                return True
    return False


def is_relation_admissible(pres, w):
    pats = _relation_patterns(pres)
    if not pats:
        return True
    maxlen = max(len(p) for p in pats)
    if w.shape == "finite":
        return not _contains_pattern(list(w.letters), pats)
    if w.shape == "zper":
        reps = -(-(maxlen) // len(w.period)) + 1
        return not _contains_pattern(list(w.period) * reps, pats)
    reps = -(-(maxlen) // len(w.period)) + 1
    return not _contains_pattern(list(w.letters) + list(w.period) * reps, pats)


def is_right_end_admissible(pres, w):
    if w.shape != "finite":
        return True
    n = len(w.letters)
    v = vertex_at(pres, w, n)
    need = -pres.sign(w.letters[-1].inverse()) if n else w.eps
    for s in pres.specials_at(v):
        if pres.sign(Letter("s", s)) == need:
            return False
    return True


def is_end_admissible(pres, w):
    if w.shape == "finite":
        idx = range(0, len(w.letters) + 1)
    elif w.shape == "zper":
        idx = range(1, len(w.period) + 1)
    else:
        idx = range(0, len(w.letters) + len(w.period) + 1)
    for i in idx:
        v = vertex_at(pres, w, i)
        for s in pres.specials_at(v):
            star = Letter("s", s)
            here = w.letter_at(i) == star if i != 0 or w.shape == "zper" else False
            nxt = w.letter_at(i + 1) == star
            if not (here or nxt):
                return False
    return True


# -- the total order on H(l, eps) --------------------------------------------


def _horizon(u, w):
    lens = []
    for x in (u, w):
        if x.shape == "finite":
            lens.append((len(x.letters), 1))
        else:
            lens.append((len(x.letters), len(x.period)))
    pre = max(l[0] for l in lens)
    per = math.lcm(lens[0][1], lens[1][1])
    return pre + 2 * per + 2


def compare(pres, u, w):
    """-1, 0 or +1 for u < w, u == w, u > w in H(l, eps)."""
    if u.v0 != w.v0 or u.eps != w.eps:
        raise NotComparable("words live in different H(l, eps)")
    if u.shape == "zper" or w.shape == "zper":
        raise NotComparable("two-sided words are not ordered")
    if not (is_right_end_admissible(pres, u) and is_right_end_admissible(pres, w)):
        raise NotComparable("order is defined on right-end-admissible words only")
    for i in range(1, _horizon(u, w) + 1):
        x, y = u.letter_at(i), w.letter_at(i)
        if x is None and y is None:
            return 0
        if x is not None and y is not None:
            if x == y:
                continue
            if x.kind == "d" and y.kind == "i":
                return -1
            if x.kind == "i" and y.kind == "d":
                return 1
            raise NotComparable(f"letters {x!r},{y!r} cannot disagree here")
        if x is None:
            return 1 if y.kind == "d" else -1
        return -1 if x.kind == "d" else 1
    return 0


def classify_position(pres, w, i):
    """SYMMETRY, NATURALLY_DIRECT or NATURALLY_INVERSE for a star position."""
    letter = w.letter_at(i)
    if letter is None or not letter.is_star:
        raise NotStarLetter(f"position {i} does not hold a star letter")
    left = prefix_inverse(pres, w, i - 1)
    right = suffix(pres, w, i)
    c = compare(pres, left, right)
    if c == 0:
        return SYMMETRY
    return NATURALLY_DIRECT if c > 0 else NATURALLY_INVERSE


def position_norm(pres, w, i):
    """Length of the longest common prefix of (w_{<=i-1})^{-1} and w_{>i}.

    None (infinite) when i is a symmetry.
    """
    letter = w.letter_at(i)
    if letter is None or not letter.is_star:
        raise NotStarLetter(f"position {i} does not hold a star letter")
    left = prefix_inverse(pres, w, i - 1)
    right = suffix(pres, w, i)
    for j in range(1, _horizon(left, right) + 1):
        x, y = left.letter_at(j), right.letter_at(j)
        if x is None or y is None or x != y:
            return j - 1
    return None


# -- strings and bands --------------------------------------------------------


@dataclass(frozen=True)
class StringDescriptor:
    word: Word
    symmetric: bool

    @property
    def kind(self):
        return "sym_string" if self.symmetric else "asym_string"


@dataclass(frozen=True)
class BandDescriptor:
    word: Word
    symmetric: bool

    @property
    def kind(self):
        return "sym_band" if self.symmetric else "asym_band"


def word_key(pres, w):
    if w.shape == "finite":
        return (
            "finite",
            len(w.letters),
            tuple(l.key() for l in w.letters),
            w.v0,
            0 if w.eps == 1 else 1,
        )
    return (
        w.shape,
        len(w.period),
        tuple(l.key() for l in w.period),
        w.v0,
        0 if w.eps == 1 else 1,
    )


def canonical_string_word(pres, w):
    wi = invert_word(pres, w)
    return min(w, wi, key=lambda x: word_key(pres, x))


def is_string(pres, w):
    return (
        w.shape == "finite"
        and is_end_admissible(pres, w)
        and is_relation_admissible(pres, w)
    )


def _first_letters(pres, v0, eps):
    # end-admissibility at position 0 forces w_1 to be the star of any
    # special loop at v0; two special loops leave no end-admissible word
    specials = pres.specials_at(v0)
    if len(specials) > 1:
        return []
    out = []
    for letter in pres.letters():
        if pres.head(letter) != v0 or pres.sign(letter) != eps:
            continue
        if specials and letter != Letter("s", specials[0]):
            continue
        out.append(letter)
    return out


def _extensions(pres, last):
    v = pres.tail(last)
    need = -pres.sign(last.inverse())
    return [
        l for l in pres.letters() if pres.head(l) == v and pres.sign(l) == need
    ]


def _suffix_hits_pattern(seq, pats):
    for k in range(2, len(seq) + 1):
        if tuple(seq[-k:]) in pats:
            return True
    return False


def enumerate_strings(pres, max_len):
    """Canonical representatives of all strings of length <= max_len."""
    pats = _relation_patterns(pres)
    found = {}

    def emit(word):
        cw = canonical_string_word(pres, word)
        found.setdefault(word_key(pres, cw), cw)

    for v in sorted(pres.vertices):
        if not pres.specials_at(v):
            emit(trivial_word(pres, v, 1))

    def interior_ok(seq):
        # end-admissibility at the vertex between the last two letters
        x, y = seq[-2], seq[-1]
        v = pres.tail(x)
        for s in pres.specials_at(v):
            star = Letter("s", s)
            if x != star and y != star:
                return False
        return True

    def end_ok(seq):
        v = pres.tail(seq[-1])
        for s in pres.specials_at(v):
            if seq[-1] != Letter("s", s):
                return False
        return True

    def rec(v0, eps, seq):
        if end_ok(seq):
            emit(Word("finite", v0, eps, tuple(seq)))
        if len(seq) >= max_len:
            return
        for letter in _extensions(pres, seq[-1]):
            seq.append(letter)
            if not _suffix_hits_pattern(seq, pats) and interior_ok(seq):
                rec(v0, eps, seq)
            seq.pop()

    for v0 in sorted(pres.vertices):
        for eps in (1, -1):
            for letter in _first_letters(pres, v0, eps):
                seq = [letter]
                if not _suffix_hits_pattern(seq, pats):
                    rec(v0, eps, seq)

    words = sorted(found.values(), key=lambda w: word_key(pres, w))
    return [
        StringDescriptor(w, symmetric=(w == invert_word(pres, w))) for w in words
    ]


def _rotations(block):
    m = len(block)
    return [tuple(block[(j + d) % m] for j in range(m)) for d in range(m)]


def _band_inverse_block(block):
    m = len(block)
    return tuple(block[(-j - 2) % m].inverse() for j in range(m))


def _is_primitive(block):
    m = len(block)
    for d in range(1, m):
        if m % d == 0 and all(block[j] == block[(j + d) % m] for j in range(m)):
            return False
    return True


def canonical_band_block(block):
    cands = _rotations(block) + _rotations(_band_inverse_block(block))
    return min(cands, key=lambda b: tuple(l.key() for l in b))


def enumerate_bands(pres, max_period):
    """Canonical representatives of all bands of period <= max_period."""
    pats = _relation_patterns(pres)
    maxpat = max((len(p) for p in pats), default=0)
    found = {}

    def try_close(seq):
        first, last = seq[0], seq[-1]
        if pres.tail(last) != pres.head(first):
            return
        if pres.sign(last.inverse()) != -pres.sign(first):
            return
        block = tuple(seq)
        if not _is_primitive(block):
            return
        reps = max(2, -(-maxpat // len(block)) + 1)
        if _contains_pattern(list(block) * reps, pats):
            return
        cb = canonical_band_block(block)
        if block != cb:
            return
        word = periodic_word(pres, block, check=False)
        symmetric = _band_inverse_block(block) in _rotations(block)
        found.setdefault(tuple(l.key() for l in block), BandDescriptor(word, symmetric))

    def rec(seq):
        if len(seq) >= 1:
            try_close(seq)
        if len(seq) >= max_period:
            return
        for letter in _extensions(pres, seq[-1]):
            seq.append(letter)
            if not _suffix_hits_pattern(seq, pats):
                rec(seq)
            seq.pop()

    for letter in sorted(pres.letters(), key=lambda l: l.key()):
        rec([letter])

    descs = sorted(found.values(), key=lambda d: word_key(pres, d.word))
    return descs


@dataclass(frozen=True)
class SymmetricStringForm:
    u: Word
    s: str
    k: int


@dataclass(frozen=True)
class SymmetricBandForm:
    u: Word
    v: Word
    s: str
    t: str
    p: int
    r: int


def band_symmetries(pres, w):
    """Symmetry positions of a periodic word within one period window 1..m."""
    out = []
    for i in range(1, len(w.period) + 1):
        letter = w.letter_at(i)
        if letter is not None and letter.is_star:
            if classify_position(pres, w, i) == SYMMETRY:
                out.append(i)
    return out


def symmetric_decomposition(pres, desc):
    """The (u, s) or (u, v, s, t, p, r) shape of a symmetric string or band."""
    w = desc.word
    if not desc.symmetric:
        raise NotSymmetric("descriptor is not symmetric")
    if isinstance(desc, StringDescriptor):
        n = len(w.letters)
        k = (n - 1) // 2
        center = w.letters[k]
        if n % 2 == 0 or not center.is_star:
            raise NotSymmetric("symmetric string must have odd length with a star center")
        u = Word("finite", w.v0, w.eps, w.letters[:k]) if k else trivial_word(pres, w.v0, w.eps)
        return SymmetricStringForm(u=u, s=center.name, k=k)
    syms = band_symmetries(pres, w)
    if not syms:
        raise NotSymmetric("no symmetry found in one period")
    m = len(w.period)
    n = m // 2
    s0 = syms[0]
    j1 = s0 % n
    if j1 > 0:
        j1 -= n
    p = -j1
    r = n - 1 - p
    t_letter = w.letter_at(j1)
    s_letter = w.letter_at(r + 1)
    u_letters = tuple(w.letter_at(j) for j in range(-p + 1, 1))
    v_letters = tuple(w.letter_at(j) for j in range(1, r + 1))
    u = (
        Word("finite", vertex_at(pres, w, -p), pres.sign(u_letters[0]), u_letters)
        if u_letters
        else trivial_word(pres, vertex_at(pres, w, 0), -pres.sign(t_letter))
    )
    v = (
        Word("finite", vertex_at(pres, w, 0), pres.sign(v_letters[0]), v_letters)
        if v_letters
        else trivial_word(pres, vertex_at(pres, w, 0), w.eps)
    )
    return SymmetricBandForm(u=u, v=v, s=s_letter.name, t=t_letter.name, p=p, r=r)
