"""Walks, their quivers, the canonically associated walk, index automorphisms
and the explicit construction of string/band modules.

A walk carries the same data as a word but each letter is an arrow with a
chosen direction (special loops may appear direct or inverse).  Since the
canonically associated walk of a symmetric band orients symmetry positions
by the sign of the index, a two-sided shape with separate blocks for the
positive and non-positive axis is provided alongside finite, right-infinite
and periodic shapes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidParameterMatrix,
    NotEndAdmissible,
    PreconditionViolated,
)
from .fields import Aut
from .linalg import Matrix
from .presentation import Letter
from .skewquad import twist_quadratic
from . import words as words_mod
from .words import (
    NATURALLY_INVERSE,
    SYMMETRY,
    StringDescriptor,
    Word,
    classify_position,
    symmetric_decomposition,
)


@dataclass(frozen=True)
class WalkLetter:
    name: str
    direct: bool

    def inverse(self):
        return WalkLetter(self.name, not self.direct)

    def __repr__(self):
        return self.name if self.direct else f"{self.name}^-1"


@dataclass(frozen=True)
class Walk:
    shape: str  # 'finite' | 'right' | 'zper' | 'ztwo'
    v0: str
    eps: int
    letters: tuple = ()  # finite: all; right: prefix
    period: tuple = ()  # right/zper: block; ztwo: block for i >= 1
    neg_period: tuple = ()  # ztwo: block with C_0 = neg[0], C_{-j} = neg[j % m]

    def letter_at(self, i):
        if self.shape == "finite":
            return self.letters[i - 1] if 1 <= i <= len(self.letters) else None
        if self.shape == "right":
            if i < 1:
                return None
            k = len(self.letters)
            if i <= k:
                return self.letters[i - 1]
            return self.period[(i - k - 1) % len(self.period)]
        if self.shape == "zper":
            return self.period[(i - 1) % len(self.period)]
        if i >= 1:
            return self.period[(i - 1) % len(self.period)]
        return self.neg_period[(-i) % len(self.neg_period)]

    def length(self):
        return len(self.letters) if self.shape == "finite" else None

    def __repr__(self):
        if self.shape == "finite":
            return "".join(repr(l) for l in self.letters) or f"triv({self.v0},{self.eps:+d})"
        if self.shape == "right":
            return "".join(repr(l) for l in self.letters) + "(" + "".join(repr(l) for l in self.period) + ")^inf"
        if self.shape == "zper":
            return "inf(" + "".join(repr(l) for l in self.period) + ")inf"
        return (
            "...(" + "".join(repr(l) for l in reversed(self.neg_period)) + ")|("
            + "".join(repr(l) for l in self.period) + ")..."
        )


def walk_letter_head(pres, wl):
    info = pres.arrows[wl.name]
    return info.target if wl.direct else info.source


def walk_letter_tail(pres, wl):
    info = pres.arrows[wl.name]
    return info.source if wl.direct else info.target


def walk_letter_to_word_letter(pres, wl):
    if wl.name in pres.special:
        return Letter("s", wl.name)
    return Letter("d" if wl.direct else "i", wl.name)


def walk_star(pres, walk):
    """The underlying word C*."""
    conv = lambda block: tuple(walk_letter_to_word_letter(pres, l) for l in block)
    if walk.shape == "finite":
        return Word("finite", walk.v0, walk.eps, conv(walk.letters))
    if walk.shape == "right":
        return Word("right", walk.v0, walk.eps, conv(walk.letters), conv(walk.period))
    # for both two-sided shapes the word is periodic with the positive block
    return Word("zper", walk.v0, walk.eps, (), conv(walk.period))


def walk_vertex(pres, walk, i):
    if i == 0:
        return walk.v0
    letter = walk.letter_at(i)
    if letter is not None:
        return walk_letter_tail(pres, letter)
    if i > 0 and walk.shape == "finite" and i == len(walk.letters):
        return walk_letter_tail(pres, walk.letters[-1])
    raise IndexError(f"index {i} outside the walk")


def finite_walk(pres, letters, v0=None, eps=None):
    letters = tuple(letters)
    if letters:
        v0 = walk_letter_head(pres, letters[0])
        eps = pres.sign(walk_letter_to_word_letter(pres, letters[0]))
    walk = Walk("finite", v0, eps, letters)
    words_mod.validate_word(pres, walk_star(pres, walk))
    return walk


def make_walk_from_word(pres, w, orientations):
    """Replace each star letter of w by the oriented walk letter.

    ``orientations``: mapping position -> bool (direct) for star positions;
    positions are taken modulo the period for periodic words.
    """
    def orient(letter, i):
        if not letter.is_star:
            return WalkLetter(letter.name, letter.kind == "d")
        return WalkLetter(letter.name, orientations(i))

    if w.shape == "finite":
        letters = tuple(orient(w.letter_at(i), i) for i in range(1, len(w.letters) + 1))
        return Walk("finite", w.v0, w.eps, letters)
    if w.shape == "zper":
        m = len(w.period)
        pos = tuple(orient(w.letter_at(i), i) for i in range(1, m + 1))
        neg = tuple(orient(w.letter_at(-j), -j) for j in range(m))
        if all(neg[j] == pos[m - 1 - j] for j in range(m)):
            return Walk("zper", w.v0, w.eps, (), pos)
        return Walk("ztwo", w.v0, w.eps, (), pos, neg)
    raise NotEndAdmissible("canonical walks exist for finite or periodic words")


def canonical_walk(pres, w):
    """The naturally oriented walk with star positions at symmetries split by sign."""
    if not words_mod.is_end_admissible(pres, w):
        raise NotEndAdmissible("word is not end-admissible")

    classes = {}

    def orientation(i):
        key = i
        if w.shape == "zper":
            key = (i - 1) % len(w.period) + 1
        if key not in classes:
            classes[key] = classify_position(pres, w, key)
        c = classes[key]
        if c == SYMMETRY:
            return i <= 0
        return c != NATURALLY_INVERSE

    return make_walk_from_word(pres, w, orientation)


def special_direct_walk(pres, w):
    return make_walk_from_word(pres, w, lambda i: True)


def special_inverse_walk(pres, w):
    return make_walk_from_word(pres, w, lambda i: False)


# -- quiver of a walk ----------------------------------------------------------


@dataclass(frozen=True)
class WalkQuiver:
    """Arrows (i, j, label) meaning an arrow i -> j sent to the label arrow."""

    vertices: tuple
    arrows: tuple
    vertex_map: dict

    def arrow_from(self, i):
        return [a for a in self.arrows if a[0] == i]


def quiver_of_walk(pres, walk, window=None):
    """The quiver Q_C with f_C, for finite walks or a window of indices."""
    if walk.shape == "finite":
        lo, hi = 0, len(walk.letters)
    elif window is not None:
        lo, hi = window
    else:
        raise NotEndAdmissible("infinite walks need an explicit window")
    vertices = tuple(range(lo, hi + 1))
    arrows = []
    for i in range(lo + 1, hi + 1):
        letter = walk.letter_at(i)
        if letter is None:
            continue
        if letter.direct:
            arrows.append((i, i - 1, letter.name))
        else:
            arrows.append((i - 1, i, letter.name))
    vmap = {i: walk_vertex(pres, walk, i) for i in vertices}
    return WalkQuiver(vertices, tuple(arrows), vmap)


# -- index automorphisms -------------------------------------------------------


def pi_automorphisms(pres, walk, lo=None, hi=None, sigma=None, one=None):
    """The automorphisms pi_i for lo <= i <= hi, with pi_0 the identity.

    For an arrow i -> j of the walk quiver carrying the arrow a, they satisfy
    pi_j = sigma_a * pi_i.  ``sigma``/``one`` may supply any group-like values
    (supporting ``*`` and ``.inverse()``) keyed by arrow name; by default the
    presentation's Frobenius powers are used.
    """
    if walk.shape == "finite":
        lo = 0 if lo is None else lo
        hi = len(walk.letters) if hi is None else hi
    elif lo is None or hi is None:
        raise PreconditionViolated("infinite walks need an explicit index window")
    if sigma is None:
        sigma = lambda name: pres.sigma(name)
    if one is None:
        one = Aut(pres.field, 0)
    pi = {0: one}
    for i in range(1, hi + 1):
        letter = walk.letter_at(i)
        s = sigma(letter.name)
        pi[i] = s.inverse() * pi[i - 1] if letter.direct else s * pi[i - 1]
    for i in range(0, lo, -1):
        letter = walk.letter_at(i)  # connects i-1 and i
        s = sigma(letter.name)
        pi[i - 1] = s * pi[i] if letter.direct else s.inverse() * pi[i]
    return {i: pi[i] for i in range(lo, hi + 1)}


def walk_sigma(pres, letters, sigma=None, one=None):
    """sigma_C of a finite stretch of walk letters (function composition)."""
    if sigma is None:
        sigma = lambda name: pres.sigma(name)
    acc = one if one is not None else Aut(pres.field, 0)
    for letter in letters:
        s = sigma(letter.name)
        acc = acc * (s if letter.direct else s.inverse())
    return acc


# -- parameter ring descriptors -------------------------------------------------


ASYM_STRING = "asym_string"
SYM_STRING = "sym_string"
ASYM_BAND = "asym_band"
SYM_BAND = "sym_band"


@dataclass(frozen=True)
class RwSpec:
    kind: str
    word: Word
    walk: Walk
    Jw: tuple
    pi: dict
    tau: Aut | None = None
    rho: Aut | None = None
    q_x: object = None  # twisted quadratic acted by x (sym string / sym band)
    q_y: object = None  # twisted quadratic acted by y (sym band)
    k: int | None = None  # sym string arm length
    p: int | None = None  # sym band arm lengths
    r: int | None = None
    n: int | None = None  # length (strings) or half/full period (bands)

    @property
    def rank(self):
        return len(self.Jw)


def rw_descriptor(pres, desc):
    """Parameter-ring data for a string or band descriptor."""
    w = desc.word
    if not words_mod.is_relation_admissible(pres, w):
        raise PreconditionViolated("word is not relation-admissible")
    if w.shape == "zper" and not words_mod._is_primitive(w.period):
        raise PreconditionViolated("band block must have minimal period")
    walk = canonical_walk(pres, w)
    if isinstance(desc, StringDescriptor):
        n = len(w.letters)
        if not desc.symmetric:
            Jw = tuple(range(n + 1))
            pi = pi_automorphisms(pres, walk)
            return RwSpec(ASYM_STRING, w, walk, Jw, pi, n=n)
        form = symmetric_decomposition(pres, desc)
        k = form.k
        pi = pi_automorphisms(pres, walk)
        tau = pi[k].inverse() * pres.sigma(form.s) * pi[k]
        q_x = twist_quadratic(pi[k].inverse(), pres.quadratic(form.s))
        return RwSpec(SYM_STRING, w, walk, tuple(range(k + 1)), pi, tau=tau, q_x=q_x, k=k, n=n)
    m = len(w.period)
    if not desc.symmetric:
        Jw = tuple(range(m))
        pi = pi_automorphisms(pres, walk, lo=-1, hi=m)
        tau = pi[m].inverse() * pi[0]
        return RwSpec(ASYM_BAND, w, walk, Jw, pi, tau=tau, n=m)
    form = symmetric_decomposition(pres, desc)
    p, r = form.p, form.r
    pi = pi_automorphisms(pres, walk, lo=-p - 1, hi=r + 1)
    rho = pi[r].inverse() * pres.sigma(form.s) * pi[r]
    tau = pi[-p].inverse() * pres.sigma(form.t) * pi[-p]
    q_x = twist_quadratic(pi[r].inverse(), pres.quadratic(form.s))
    q_y = twist_quadratic(pi[-p].inverse(), pres.quadratic(form.t))
    return RwSpec(
        SYM_BAND, w, walk, tuple(range(-p, r + 1)), pi,
        tau=tau, rho=rho, q_x=q_x, q_y=q_y, p=p, r=r, n=p + r + 1,
    )


def reduce_index(spec, i):
    """(j, z) with j in J_w and b_i = b_j * z for a unit monomial z.

    z is a tuple over {'x','x-1','y','y-1'}; acting on the left of a vector
    it is applied right to left.
    """
    if spec.kind == ASYM_STRING:
        return i, ()
    if spec.kind == SYM_STRING:
        if i <= spec.k:
            return i, ()
        return spec.n - i, ("x",)
    if spec.kind == ASYM_BAND:
        m = spec.n
        j = i % m
        l = (i - j) // m
        if l == 0:
            return j, ()
        gen = "x-1" if l > 0 else "x"
        return j, (gen,) * abs(l)
    # symmetric band: alternating monomials z_l with
    #   b_j z_l = b_{l n + j}          (l even)
    #   b_j z_l = b_{l n + r - p - j}  (l odd)
    nn = spec.n
    l = (i + spec.p) // nn
    if l % 2 == 0:
        j = i - l * nn
    else:
        j = l * nn + spec.r - spec.p - i
    return j, _alternating_monomial(l)


def _alternating_monomial(l):
    if l == 0:
        return ()
    out = []
    gens = ("x", "y") if l > 0 else ("y", "x")
    for idx in range(abs(l)):
        out.append(gens[idx % 2])
    return tuple(reversed(out))


# -- parameter modules ----------------------------------------------------------


@dataclass(frozen=True)
class RwModule:
    """A finite-dimensional module over the parameter ring, given by matrices.

    dim: K-dimension; lam: the matrix of the x-action (strings/asym bands) or
    the y-action (symmetric bands); phi: the x-action of a symmetric band.
    """

    spec: RwSpec
    dim: int
    lam: Matrix | None = None
    phi: Matrix | None = None


def make_rw_module(spec, dim=None, lam=None, phi=None):
    if spec.kind == ASYM_STRING:
        if dim is None:
            dim = lam.nrows if lam is not None else 1
        return RwModule(spec, dim)
    if spec.kind == SYM_STRING:
        if lam is None:
            raise InvalidParameterMatrix("symmetric string parameter needs a matrix")
        if not spec.q_x.is_root_matrix(lam):
            raise InvalidParameterMatrix("matrix does not satisfy the twisted quadratic")
        return RwModule(spec, lam.nrows, lam=lam)
    if spec.kind == ASYM_BAND:
        if lam is None:
            raise InvalidParameterMatrix("band parameter needs a matrix")
        if not lam.is_invertible():
            raise InvalidParameterMatrix("band parameter must be invertible")
        return RwModule(spec, lam.nrows, lam=lam)
    if lam is None or phi is None:
        raise InvalidParameterMatrix("symmetric band parameter needs two matrices")
    if lam.nrows != phi.nrows:
        raise InvalidParameterMatrix("the two parameter matrices must have equal size")
    if not spec.q_y.is_root_matrix(lam):
        raise InvalidParameterMatrix("y-matrix does not satisfy its twisted quadratic")
    if not spec.q_x.is_root_matrix(phi):
        raise InvalidParameterMatrix("x-matrix does not satisfy its twisted quadratic")
    return RwModule(spec, lam.nrows, lam=lam, phi=phi)


def _gen_action(module, gen, v):
    """Left action of a ring generator on a row vector of the module."""
    spec = module.spec
    if spec.kind == SYM_STRING:
        pairs = {"x": (spec.tau, module.lam)}
    elif spec.kind == ASYM_BAND:
        pairs = {"x": (spec.tau, module.lam)}
    else:
        pairs = {"x": (spec.rho, module.phi), "y": (spec.tau, module.lam)}
    if gen.endswith("-1"):
        aut, mat = pairs[gen[:-2]]
        return aut.inverse()(mat.inverse().apply_row(list(v)))
    aut, mat = pairs[gen]
    return mat.apply_row(list(aut(tuple(v))))


def monomial_action(module, monomial, v):
    """Apply a monomial (tuple of generators, leftmost applied last)."""
    for gen in reversed(monomial):
        v = _gen_action(module, gen, v)
    return tuple(v)


# -- module construction ---------------------------------------------------------


def _walk_rules(pres, walk, i, arrow):
    """How ``arrow`` acts on the generator at index i: list of (coeff, index).

    Empty list encodes the zero action; coefficients are 1 for quiver arrows
    and (beta, -gamma) for the special-loop fallback.
    """
    here = walk.letter_at(i)
    nxt = walk.letter_at(i + 1)
    if here is not None and here == WalkLetter(arrow, True):
        return [(None, i - 1)]
    if nxt is not None and nxt == WalkLetter(arrow, False):
        return [(None, i + 1)]
    if arrow not in pres.special:
        return []
    q = pres.quadratic(arrow)
    if here is not None and here == WalkLetter(arrow, False):
        return [(q.beta, i), (-q.gamma, i - 1)]
    if nxt is not None and nxt == WalkLetter(arrow, True):
        return [(q.beta, i), (-q.gamma, i + 1)]
    raise NotEndAdmissible(f"no action rule for {arrow!r} at index {i}")


def build_module(pres, desc_or_spec, module=None, dim=1, lam=None, phi=None):
    """The representation M(C_w) (x) V for a parameter module V.

    Basis at each vertex: pairs (i, c) with i in J_w ascending and c a
    V-coordinate; every arrow matrix is assembled from the walk rules, with
    out-of-range generators folded back into J_w through unit monomials.
    """
    from .reps import Representation

    spec = desc_or_spec if isinstance(desc_or_spec, RwSpec) else rw_descriptor(pres, desc_or_spec)
    if module is None:
        module = make_rw_module(spec, dim=dim, lam=lam, phi=phi)
    field = pres.field
    m = module.dim
    J = sorted(spec.Jw)
    word = spec.word
    basis = {v: [] for v in pres.vertices}
    for i in J:
        v = words_mod.vertex_at(pres, word, i)
        for c in range(m):
            basis[v].append((i, c))
    index = {v: {bc: pos for pos, bc in enumerate(lst)} for v, lst in basis.items()}
    dims = {v: len(lst) for v, lst in basis.items()}

    mats = {}
    for arrow in pres.arrow_names:
        info = pres.arrows[arrow]
        rows = [[field.zero() for _ in range(dims[info.target])] for _ in range(dims[info.source])]
        for i in J:
            if words_mod.vertex_at(pres, word, i) != info.source:
                continue
            for coeff, h in _walk_rules(pres, spec.walk, i, arrow):
                if coeff is not None and not coeff:
                    continue
                j, z = reduce_index(spec, h)
                ch = spec.pi[h].inverse()(coeff) if coeff is not None else None
                for c in range(m):
                    e = [field.zero()] * m
                    e[c] = field.one()
                    if ch is not None:
                        e = [ch * x for x in e]
                    vec = monomial_action(module, z, e) if z else tuple(e)
                    vec = spec.pi[j](tuple(vec))
                    row = rows[index[info.source][(i, c)]]
                    for d, val in enumerate(vec):
                        if val:
                            col = index[info.target][(j, d)]
                            row[col] = row[col] + val
        mats[arrow] = Matrix(field, rows, dims[info.source], dims[info.target])
    labels = {v: list(lst) for v, lst in basis.items()}
    return Representation(pres, dims, mats, labels=labels)


def walk_suffix(pres, walk, i):
    """The walk C_{>i}."""
    if walk.shape == "finite":
        n = len(walk.letters)
        letters = walk.letters[i:]
        if letters:
            return finite_walk(pres, letters)
        star = walk_star(pres, walk)
        tail = words_mod.suffix(pres, star, i)
        return Walk("finite", tail.v0, tail.eps, ())
    if walk.shape in ("zper", "ztwo"):
        m = len(walk.period)
        if walk.shape == "zper" or i >= 0:
            block = tuple(walk.period[(i + j) % m] for j in range(m))
            v0 = walk_vertex(pres, walk, i)
            eps = pres.sign(walk_letter_to_word_letter(pres, block[0]))
            return Walk("right", v0, eps, (), block)
        # ztwo with i < 0: prefix from the non-positive side, then the block
        prefix = tuple(walk.letter_at(j) for j in range(i + 1, 1))
        block = walk.period
        v0 = walk_vertex(pres, walk, i)
        eps = pres.sign(walk_letter_to_word_letter(pres, prefix[0]))
        return Walk("right", v0, eps, prefix, block)
    raise PreconditionViolated("suffix of a right-infinite walk is not needed")


def walk_prefix_inverse(pres, walk, i):
    """The walk (C_{<=i})^{-1}."""
    if walk.shape == "finite":
        letters = tuple(walk.letters[j].inverse() for j in range(i - 1, -1, -1))
        if letters:
            return finite_walk(pres, letters)
        star = walk_star(pres, walk)
        left = words_mod.prefix_inverse(pres, star, i)
        return Walk("finite", left.v0, left.eps, ())
    if walk.shape in ("zper", "ztwo"):
        m = len(walk.period)
        if walk.shape == "zper" or i <= 0:
            block = tuple(walk.letter_at(i - j).inverse() for j in range(m))
            v0 = walk_vertex(pres, walk, i)
            eps = pres.sign(walk_letter_to_word_letter(pres, block[0]))
            return Walk("right", v0, eps, (), block)
        prefix = tuple(walk.letter_at(j).inverse() for j in range(i, 0, -1))
        block = tuple(walk.letter_at(-j).inverse() for j in range(m))
        v0 = walk_vertex(pres, walk, i)
        eps = pres.sign(walk_letter_to_word_letter(pres, prefix[0]))
        return Walk("right", v0, eps, prefix, block)
    raise PreconditionViolated("prefix of a right-infinite walk is not needed")


def walk_module(pres, walk):
    """M(C) itself for a finite walk with end-admissible word, basis b_0..b_n.

    The zero relations are NOT imposed; they vanish automatically exactly
    when the word is relation-admissible.
    """
    from .reps import Representation

    field = pres.field
    word = walk_star(pres, walk)
    if not words_mod.is_end_admissible(pres, word):
        raise NotEndAdmissible("walk module needs an end-admissible word")
    n = len(walk.letters)
    basis = {v: [] for v in pres.vertices}
    for i in range(n + 1):
        basis[walk_vertex(pres, walk, i)].append(i)
    index = {v: {i: pos for pos, i in enumerate(lst)} for v, lst in basis.items()}
    dims = {v: len(lst) for v, lst in basis.items()}
    mats = {}
    for arrow in pres.arrow_names:
        info = pres.arrows[arrow]
        rows = [[field.zero() for _ in range(dims[info.target])] for _ in range(dims[info.source])]
        for i in range(n + 1):
            if walk_vertex(pres, walk, i) != info.source:
                continue
            for coeff, h in _walk_rules(pres, walk, i, arrow):
                val = field.one() if coeff is None else coeff
                rows[index[info.source][i]][index[info.target][h]] = (
                    rows[index[info.source][i]][index[info.target][h]] + val
                )
        mats[arrow] = Matrix(field, rows, dims[info.source], dims[info.target])
    labels = {v: [(i, 0) for i in lst] for v, lst in basis.items()}
    return Representation(pres, dims, mats, labels=labels)


def _irreducible_polys_over(field, max_deg):
    """Monic irreducibles over K of degree <= max_deg (root test; degree <= 3)."""
    if max_deg > 3:
        raise PreconditionViolated("band parameter helper only goes up to cubics")
    out = []
    elems = list(field.elements())
    for deg in range(1, max_deg + 1):
        for code in range(field.q ** deg):
            coeffs = []
            c = code
            for _ in range(deg):
                coeffs.append(field.el(c % field.q))
                c //= field.q
            poly = coeffs + [field.one()]
            if deg == 1:
                out.append(poly)
                continue
            if all(_poly_value(field, poly, x) for x in elems):
                out.append(poly)
    return out


def _poly_value(field, poly, x):
    acc = field.zero()
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _poly_power(field, poly, k):
    acc = [field.one()]
    for _ in range(k):
        out = [field.zero()] * (len(acc) + len(poly) - 1)
        for i, a in enumerate(acc):
            for j, b in enumerate(poly):
                out[i + j] = out[i + j] + a * b
        acc = out
    return acc


def _companion(field, poly):
    m = len(poly) - 1
    rows = []
    for i in range(m - 1):
        rows.append([field.one() if j == i + 1 else field.zero() for j in range(m)])
    rows.append([-poly[j] for j in range(m)])
    return Matrix(field, rows, m, m)


def indecomposable_band_parameters(spec, max_dim):
    """Invertible parameter matrices giving indecomposable band inputs.

    With a trivial twist these are companion matrices of q(x)^k for monic
    irreducible q != x (the classical Laurent-ring indecomposables); with a
    nontrivial twist, the 1x1 units are emitted and larger parameters are
    left to the caller.
    """
    if spec.kind != ASYM_BAND:
        raise PreconditionViolated("band parameters only exist for asymmetric bands")
    field = spec.q_x.field if spec.q_x else spec.tau.field
    out = []
    if not spec.tau.is_identity:
        for x in field.elements():
            if x:
                out.append(Matrix(field, [[x]]))
                break
        return out
    for poly in _irreducible_polys_over(field, min(max_dim, 3)):
        if not poly[0]:
            continue  # q = x is not invertible
        deg = len(poly) - 1
        k = 1
        while deg * k <= max_dim:
            out.append(_companion(field, _poly_power(field, poly, k)))
            k += 1
    return out
