"""One-sided walk filtrations, the top/bottom subquotient dimension, and the
module decomposition report driven by the dimension formula."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotRightEndAdmissible, SpaceMismatch
from .linalg import Subspace, is_k_stable, k_dim
from .presentation import Letter
from . import relations as rel_mod
from .relations import walk_letter_relation
from . import walks as walks_mod
from .walks import (
    rw_descriptor,
    walk_prefix_inverse,
    walk_star,
    walk_suffix,
    walk_vertex,
)
from . import words as words_mod


def _letters_of(walk):
    if walk.shape == "finite":
        return walk.letters
    return walk.letters + walk.period  # prefix then one period (right shape)


def _apply_walk_letters(rep, letters, space):
    """Apply the chain of letter relations right to left to a subspace."""
    for wl in reversed(letters):
        space = walk_letter_relation(rep, wl).image(space)
    return space


def _walk_relation(rep, letters):
    """The composite relation of a finite stretch of walk letters."""
    if not letters:
        raise SpaceMismatch("empty composite needs an explicit space")
    rel = walk_letter_relation(rep, letters[-1])
    for wl in reversed(letters[:-1]):
        rel = walk_letter_relation(rep, wl).compose(rel)
    return rel


def _extension_arrows(pres, walk):
    """(a, b): arrows extending the walk by a^-1 (for +) or b (for -), if any."""
    word = walk_star(pres, walk)
    n = len(walk.letters)
    v = walk_vertex(pres, walk, n)
    if n:
        need = -pres.sign(word.letter_at(n).inverse())
    else:
        need = word.eps
    plus = minus = None
    for name in pres.ordinary_arrows():
        if pres.arrows[name].source == v and pres.sign(Letter("i", name)) == need:
            plus = name
        if pres.arrows[name].target == v and pres.sign(Letter("d", name)) == need:
            minus = name
    return plus, minus


def walk_plus_minus(rep, walk):
    """(D^+(M), D^-(M)) for a walk whose word lies in some H(l, eps)."""
    pres = rep.pres
    if not words_mod.is_right_end_admissible(pres, walk_star(pres, walk)):
        raise NotRightEndAdmissible("walk filtration needs a right-end-admissible word")
    p, n = rep.field.p, rep.field.n
    if walk.shape == "finite":
        letters = walk.letters
        tail_vertex = walk_vertex(pres, walk, len(letters))
        plus_arrow, minus_arrow = _extension_arrows(pres, walk)
        if plus_arrow is not None:
            start_plus = rel_mod.arrow_relation(rep, plus_arrow).preimage(
                Subspace.zero(p, rep.prime_dim(pres.arrows[plus_arrow].target))
            )
        else:
            start_plus = Subspace.full(p, rep.prime_dim(tail_vertex))
        if minus_arrow is not None:
            start_minus = rel_mod.arrow_relation(rep, minus_arrow).image(
                Subspace.full(p, rep.prime_dim(pres.arrows[minus_arrow].source))
            )
        else:
            start_minus = Subspace.zero(p, rep.prime_dim(tail_vertex))
        return (
            _apply_walk_letters(rep, letters, start_plus),
            _apply_walk_letters(rep, letters, start_minus),
        )
    if walk.shape != "right":
        raise NotRightEndAdmissible("two-sided walks have no one-sided filtration")
    period_rel = _walk_relation(rep, walk.period)
    lower, upper = period_rel.stable_pair()
    return (
        _apply_walk_letters(rep, walk.letters, upper),
        _apply_walk_letters(rep, walk.letters, lower),
    )


@dataclass
class FunctorReport:
    word: object
    kind: str
    index: int
    rank: int  # |J_w|
    t_dim: int
    b_dim: int
    f_dim: int


def f_dim(rep, desc_or_spec, index=None):
    """dim_K of the top/bottom subquotient of a string or band descriptor."""
    pres = rep.pres
    spec = (
        desc_or_spec
        if isinstance(desc_or_spec, walks_mod.RwSpec)
        else rw_descriptor(pres, desc_or_spec)
    )
    i = min(spec.Jw) if index is None else index
    after = walk_suffix(pres, spec.walk, i)
    before = walk_prefix_inverse(pres, spec.walk, i)
    d_plus, d_minus = walk_plus_minus(rep, after)
    e_plus, e_minus = walk_plus_minus(rep, before)
    top = d_plus.intersect(e_plus)
    bottom = d_plus.intersect(e_minus).sum(d_minus.intersect(e_plus))
    field = rep.field
    for space in (top, bottom):
        if not is_k_stable(field, space):
            raise SpaceMismatch("filtration produced a non-K-stable subspace")
    t, b = k_dim(field, top), k_dim(field, bottom)
    return FunctorReport(spec.word, spec.kind, i, len(spec.Jw), t, b, t - b)


@dataclass
class DecompositionReport:
    entries: list  # (descriptor, rank, f_dim)
    dim: int
    checksum: int
    complete: bool

    def as_dict(self):
        from .serialize import word_to_compact

        return {
            "summands": [
                {
                    "kind": d.kind,
                    "symmetric": d.symmetric,
                    "f_dim": f,
                    "Jw": r,
                    "word": word_to_compact(d.word),
                }
                for d, r, f in self.entries
            ],
            "dim": self.dim,
            "checksum": self.checksum,
            "complete": self.complete,
        }


_DESC_CACHE = {}


def candidate_descriptors(pres, dim, max_len=None, max_period=None):
    """All strings/bands that could contribute to a module of K-dimension dim.

    A contributing descriptor w has |J_w| <= dim, so asymmetric strings have
    length <= dim - 1, symmetric strings length <= 2 dim - 1, asymmetric
    bands period <= dim and symmetric bands period <= 2 dim.  Symmetric
    shapes only exist in the presence of special loops.
    """
    key = (id(pres), dim, max_len, max_period)
    hit = _DESC_CACHE.get(key)
    if hit is not None:
        return hit[1]
    has_special = bool(pres.special)
    asym_len = dim - 1 if max_len is None else max_len
    sym_len = 2 * dim - 1 if max_len is None else max_len
    band_per = dim if max_period is None else max_period
    sym_per = 2 * dim if max_period is None else max_period
    descs = []
    seen = set()
    for d in words_mod.enumerate_strings(pres, asym_len):
        descs.append(d)
        seen.add(words_mod.word_key(pres, d.word))
    if has_special and sym_len > asym_len:
        for d in words_mod.enumerate_strings(pres, sym_len):
            if d.symmetric and words_mod.word_key(pres, d.word) not in seen:
                descs.append(d)
                seen.add(words_mod.word_key(pres, d.word))
    for d in words_mod.enumerate_bands(pres, band_per):
        descs.append(d)
        seen.add(words_mod.word_key(pres, d.word))
    if has_special and sym_per > band_per:
        for d in words_mod.enumerate_bands(pres, sym_per):
            if d.symmetric and words_mod.word_key(pres, d.word) not in seen:
                descs.append(d)
                seen.add(words_mod.word_key(pres, d.word))
    _DESC_CACHE[key] = (pres, descs)
    return descs


def multiplicities(rep, max_len=None, max_period=None, descriptors=None):
    """Nonzero subquotient dimensions over all candidate strings and bands.

    checksum = sum of |J_w| * f_dim; ``complete`` records whether it reaches
    dim_K of the module, which the dimension formula guarantees when the
    search bounds are at their defaults or larger.
    """
    dim = rep.dim()
    if descriptors is None:
        descriptors = candidate_descriptors(rep.pres, dim, max_len, max_period)
    entries = []
    for desc in descriptors:
        spec = _spec_of(rep.pres, desc)
        if len(spec.Jw) > dim:
            continue
        if not _vertex_counts_fit(rep, spec):
            continue
        report = f_dim(rep, spec)
        if report.f_dim:
            entries.append((desc, report.rank, report.f_dim))
    checksum = sum(r * f for _, r, f in entries)
    return DecompositionReport(entries, dim, checksum, checksum == dim)


_SPEC_CACHE = {}


def _spec_of(pres, desc):
    key = (id(pres), words_mod.word_key(pres, desc.word), desc.word.shape)
    hit = _SPEC_CACHE.get(key)
    if hit is None:
        hit = _SPEC_CACHE[key] = (pres, rw_descriptor(pres, desc))
    return hit[1]


def _vertex_counts_fit(rep, spec):
    """A summand of shape w needs #(J_w at l) <= dim_K e_l M at each vertex."""
    counts = {}
    for i in spec.Jw:
        v = words_mod.vertex_at(rep.pres, spec.word, i)
        counts[v] = counts.get(v, 0) + 1
    return all(rep.dims.get(v, 0) >= c for v, c in counts.items())
