"""Classification-independent ground truth: Hom spaces, endomorphism rings,
indecomposability and isomorphism tests, and brute-force decomposition.

Everything is exact linear algebra over the prime subfield.  A morphism is a
tuple of K-matrices (one per vertex) intertwining raw arrow actions; the
endomorphism ring is handled as a finite-dimensional F_p-algebra acting
faithfully on the module, where its radical is computed with the
characteristic-polynomial-coefficient chain for small characteristic.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from .errors import PresentationMismatch, TooLarge
from .fields import Aut
from .linalg import (
    Matrix,
    left_nullspace,
    mat_vec,
    prime_matrix,
    rref,
)
from .reps import Representation

DEFAULT_SEED = 987654321
BRUTE_LIMIT = 12  # prime-field dimension bound for brute_decompose
EXHAUSTIVE_END_DIM = 10  # exhaustive idempotent search below this End dimension
EXHAUSTIVE_FIELD = 4


def _seed():
    return int(os.environ.get("CLANNISH_SEED", DEFAULT_SEED))


# -- direct sums and submodules -------------------------------------------------


def direct_sum(m1, m2):
    if m1.pres is not m2.pres:
        raise PresentationMismatch("summands live over different presentations")
    pres = m1.pres
    field = pres.field
    dims = {v: m1.dims[v] + m2.dims[v] for v in pres.vertices}
    mats = {}
    for name in pres.arrow_names:
        info = pres.arrows[name]
        a, b = m1.mats[name], m2.mats[name]
        rows = []
        for r in a.rows:
            rows.append(list(r) + [field.zero()] * b.ncols)
        for r in b.rows:
            rows.append([field.zero()] * a.ncols + list(r))
        mats[name] = Matrix(field, rows, dims[info.source], dims[info.target])
    return Representation(pres, dims, mats)


def sub_representation(rep, spaces):
    """Restrict to per-vertex K-subspaces (given as K-row matrices)."""
    pres = rep.pres
    field = pres.field
    dims = {v: spaces[v].nrows for v in pres.vertices}
    mats = {}
    for name in pres.arrow_names:
        info = pres.arrows[name]
        src, tgt = spaces[info.source], spaces[info.target]
        sigma = pres.sigma(name)
        rows = []
        for r in src.rows:
            img = rep.mats[name].apply_row(tuple(sigma(x) for x in r))
            rows.append(_coords_in_basis(field, tgt, img))
        mats[name] = Matrix(field, rows, dims[info.source], dims[info.target])
    return Representation(pres, dims, mats)


def _coords_in_basis(field, basis_matrix, vector):
    """Solve x @ basis_matrix == vector over K (basis rows independent)."""
    nn = basis_matrix.nrows
    if nn == 0:
        if any(vector):
            raise ArithmeticError("vector outside the subspace")
        return []
    cols = basis_matrix.ncols
    aug = [list(basis_matrix.rows[i]) + [field.one() if j == i else field.zero() for j in range(nn)] for i in range(nn)]
    vec = list(vector) + [field.zero()] * nn
    # gaussian elimination on the basis rows, tracking operations on vec
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, nn) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][c].inverse()
        aug[r] = [inv * x for x in aug[r]]
        for i in range(nn):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        if vec[c]:
            f = vec[c]
            vec = [x - f * y for x, y in zip(vec, aug[r])]
        pivots.append(c)
        r += 1
        if r == nn:
            break
    if any(vec[:cols]):
        raise ArithmeticError("vector outside the subspace")
    return [-x for x in vec[cols:]]


# -- Hom spaces ------------------------------------------------------------------


@dataclass
class HomSpace:
    source: Representation
    target: Representation
    basis: list  # list of dict vertex -> Matrix

    @property
    def dim(self):
        return len(self.basis)


def hom_space(m1, m2):
    """All morphisms m1 -> m2: per-vertex K-matrices intertwining the arrows.

    The intertwining condition M_a @ T_{h(a)} = sigma_a(T_{t(a)}) @ N_a is
    F_p-linear in the entries of the T's, so the solution space is an
    F_p-space; its basis is returned as per-vertex K-matrices.
    """
    if m1.pres is not m2.pres:
        raise PresentationMismatch("modules live over different presentations")
    pres = m1.pres
    field = pres.field
    p, n = field.p, field.n
    offsets = {}
    total = 0
    for v in pres.vertices:
        offsets[v] = total
        total += m1.dims[v] * m2.dims[v] * n
    if total == 0:
        return HomSpace(m1, m2, [])

    equations = []
    for name in pres.arrow_names:
        info = pres.arrows[name]
        sigma = pres.sigma(name)
        ma, na = m1.mats[name], m2.mats[name]
        rows_eq = m1.dims[info.source] * m2.dims[info.target] * n
        if rows_eq == 0:
            continue
        # unknown block T_h contributes M_a @ T_h; block T_t contributes
        # -sigma_a(T_t) @ N_a; assemble per prime-field coordinate
        for out_i in range(m1.dims[info.source]):
            for out_j in range(m2.dims[info.target]):
                for out_c in range(n):
                    row = [0] * total
                    # (M_a @ T_h)[out_i][out_j] coordinate out_c
                    for k in range(m1.dims[info.target]):
                        coef = ma.rows[out_i][k]
                        if not coef:
                            continue
                        rm = _entry_mult_rows(field, coef)
                        base = offsets[info.target] + (k * m2.dims[info.target] + out_j) * n
                        for cc in range(n):
                            row[base + cc] = (row[base + cc] + rm[cc][out_c]) % p
                    # -(sigma(T_t) @ N_a)[out_i][out_j]
                    for k in range(m2.dims[info.source]):
                        coef = na.rows[k][out_j]
                        if not coef:
                            continue
                        rm = _entry_mult_rows(field, coef)
                        fm = _frob_rows(field, sigma.k)
                        base = offsets[info.source] + (out_i * m2.dims[info.source] + k) * n
                        for cc in range(n):
                            # coordinate cc of T entry passes through frobenius
                            # then multiplication by coef
                            vec = mat_vec(rm, fm[cc], p)
                            row[base + cc] = (row[base + cc] - vec[out_c]) % p
                    equations.append(row)
    if equations:
        sols = left_nullspace([list(c) for c in zip(*equations)], p, width=len(equations))
    else:
        sols = [[1 if i == j else 0 for j in range(total)] for i in range(total)]
    basis = []
    for s in sols:
        per_vertex = {}
        for v in pres.vertices:
            rows = []
            for i in range(m1.dims[v]):
                row = []
                for j in range(m2.dims[v]):
                    base = offsets[v] + (i * m2.dims[v] + j) * n
                    row.append(field.el(list(s[base : base + n])))
                rows.append(row)
            per_vertex[v] = Matrix(field, rows, m1.dims[v], m2.dims[v])
        basis.append(per_vertex)
    return HomSpace(m1, m2, basis)


def _entry_mult_rows(field, lam):
    from .linalg import mult_matrix

    return mult_matrix(field, lam)


def _frob_rows(field, k):
    from .linalg import frob_matrix

    return frob_matrix(field, k)


def compose_morphisms(first, then):
    """Matrices of (then o first): v -> v @ T_first @ T_then, per vertex."""
    return {v: first[v] @ then[v] for v in first}


def morphism_is_identity(m, rep):
    return all(m[v] == Matrix.identity(rep.field, rep.dims[v]) for v in rep.dims)


def identity_morphism(rep):
    return {v: Matrix.identity(rep.field, rep.dims[v]) for v in rep.dims}


def morphism_invertible(m):
    return all(mat.is_invertible() for mat in m.values())


# -- the endomorphism algebra as an F_p matrix algebra ---------------------------


class EndAlgebra:
    """End(M) acting faithfully on the module's prime-field coordinates."""

    def __init__(self, rep):
        self.rep = rep
        field = rep.field
        self.p = field.p
        hs = hom_space(rep, rep)
        self.hom = hs
        self.amb = rep.prime_dim()
        order = list(rep.pres.vertices)
        offsets = {}
        total = 0
        for v in order:
            offsets[v] = total
            total += rep.dims[v] * field.n
        self.offsets = offsets
        self.mats = [self._flatten(b) for b in hs.basis]
        self.dim = len(self.mats)

    def _flatten(self, per_vertex):
        field = self.rep.field
        nn = self.amb
        out = [[0] * nn for _ in range(nn)]
        for v, mat in per_vertex.items():
            pm = prime_matrix(field, Aut(field, 0), mat)
            base = self.offsets[v]
            for i, row in enumerate(pm):
                for j, x in enumerate(row):
                    out[base + i][base + j] = x
        return out

    def element(self, coeffs):
        nn = self.amb
        out = [[0] * nn for _ in range(nn)]
        for c, m in zip(coeffs, self.mats):
            if c % self.p == 0:
                continue
            for i in range(nn):
                row = m[i]
                orow = out[i]
                for j in range(nn):
                    if row[j]:
                        orow[j] = (orow[j] + c * row[j]) % self.p
        return out

    def coords(self, mat):
        """Coordinates of an endomorphism matrix in the hom basis."""
        width = self.amb * self.amb
        rows = [[m[i][j] for i in range(self.amb) for j in range(self.amb)] for m in self.mats]
        target = [mat[i][j] for i in range(self.amb) for j in range(self.amb)]
        aug = rows + [target]
        sols = left_nullspace(aug, self.p, width=width)
        for s in sols:
            if s[-1] % self.p:
                inv = pow(s[-1], self.p - 2, self.p)
                return [(-inv * c) % self.p for c in s[:-1]]
        raise ArithmeticError("matrix not in the algebra")


def _mat_mul(a, b, p):
    nn = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def _mat_add(a, b, p):
    return [[(x + y) % p for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _mat_eq_zero(a):
    return all(all(x == 0 for x in r) for r in a)


def _identity(nn):
    return [[1 if i == j else 0 for j in range(nn)] for i in range(nn)]


def charpoly(a, p):
    """Characteristic polynomial mod p via Hessenberg reduction.

    Returned lowest degree first, length n+1, leading coefficient 1.
    """
    nn = len(a)
    h = [row[:] for row in a]
    for c in range(nn - 1):
        piv = next((r for r in range(c + 1, nn) if h[r][c] % p), None)
        if piv is None:
            continue
        if piv != c + 1:
            h[piv], h[c + 1] = h[c + 1], h[piv]
            for r in range(nn):
                h[r][piv], h[r][c + 1] = h[r][c + 1], h[r][piv]
        inv = pow(h[c + 1][c], p - 2, p)
        for r in range(c + 2, nn):
            if h[r][c] % p:
                f = (h[r][c] * inv) % p
                h[r] = [(x - f * y) % p for x, y in zip(h[r], h[c + 1])]
                for rr in range(nn):
                    h[rr][c + 1] = (h[rr][c + 1] + f * h[rr][r]) % p
    # charpoly of Hessenberg matrix by the standard recurrence
    polys = [[1]]  # p_0 = 1
    for m in range(1, nn + 1):
        # p_m(t) = (t - h[m-1][m-1]) p_{m-1}(t) - sum over products of
        # subdiagonal entries
        term = _poly_shift_sub(polys[m - 1], h[m - 1][m - 1], p)
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = (prod * h[i][i - 1]) % p
            if prod == 0:
                break
            coef = (prod * h[i - 1][m - 1]) % p
            if coef:
                term = [
                    (x - coef * y) % p
                    for x, y in zip(term, polys[i - 1] + [0] * (len(term) - len(polys[i - 1])))
                ]
        polys.append(term)
    return polys[nn]


def _poly_shift_sub(poly, diag, p):
    # (t - diag) * poly
    out = [0] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] = (out[i + 1] + c) % p
        out[i] = (out[i] - diag * c) % p
    return out


def radical_basis(alg):
    """Basis (coordinate vectors) of the radical of the endomorphism algebra.

    Chain: J_0 = E; J_{i+1} = {x in J_i : c_{p^i}(x y) = 0 for all y in J_i}
    where c_k is the k-th characteristic polynomial coefficient of the action
    on the module.  Stops once p^i exceeds the module dimension.
    """
    p = alg.p
    nn = alg.amb
    basis = [[1 if i == j else 0 for j in range(alg.dim)] for i in range(alg.dim)]
    power = 1
    while power <= nn and basis:
        conditions = []
        mats_y = [alg.element(b) for b in basis]
        mats_x = mats_y
        rows = []
        for bx in basis:
            x = alg.element(bx)
            row = []
            for y in mats_y:
                cp = charpoly(_mat_mul(x, y, p), p)
                row.append(cp[nn - power] % p if nn - power >= 0 else 0)
            rows.append(row)
        null = left_nullspace(rows, p, width=len(mats_y))
        basis = [_combine(basis, c, p) for c in null]
        basis = [b for b in basis if any(b)]
        power *= p
    return basis


def _combine(basis, coeffs, p):
    out = [0] * len(basis[0]) if basis else []
    for c, b in zip(coeffs, basis):
        if c % p:
            out = [(o + c * x) % p for o, x in zip(out, b)]
    return out


def _charpoly_coefficient_sign_note():
    # charpoly is monic with coefficients c_k appearing at degree n-k; the
    # radical chain only needs vanishing, so global signs are irrelevant
    return None


def min_poly(mat, p):
    """Minimal polynomial of an F_p matrix, lowest degree first, monic."""
    nn = len(mat)
    width = nn * nn
    powers = [_identity(nn)]
    flat = [[powers[0][i][j] for i in range(nn) for j in range(nn)]]
    while True:
        nxt = _mat_mul(powers[-1], mat, p)
        powers.append(nxt)
        flat.append([nxt[i][j] for i in range(nn) for j in range(nn)])
        sols = left_nullspace(flat, p, width=width)
        if sols:
            # the relation with the highest power having coefficient 1
            best = None
            for s in sols:
                deg = max(i for i, c in enumerate(s) if c % p)
                if best is None or deg < best[0]:
                    best = (deg, s)
            deg, s = best
            inv = pow(s[deg], p - 2, p)
            return [(c * inv) % p for c in s[: deg + 1]]


# -- polynomial factorization over F_p (for idempotent splitting) ----------------


def _pp(poly, p):
    poly = [c % p for c in poly]
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _pdivmod(a, b, p):
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv) % p
        k = len(a) - 1 - db
        q[k] = c
        for i in range(len(b)):
            a[k + i] = (a[k + i] - c * b[i]) % p
        while a and a[-1] == 0:
            a.pop()
    return _pp(q, p), _pp(a, p)


def _pgcd(a, b, p):
    a, b = _pp(a, p), _pp(b, p)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _ppowmod(a, e, m, p):
    r = [1]
    a = _pdivmod(a, m, p)[1]
    while e:
        if e & 1:
            r = _pdivmod(_pmul(r, a, p), m, p)[1]
        a = _pdivmod(_pmul(a, a, p), m, p)[1]
        e >>= 1
    return r


def _pderiv(a, p):
    return _pp([(i * c) % p for i, c in enumerate(a)][1:], p)


def _psub(a, b, p):
    m = max(len(a), len(b))
    return _pp(
        [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(m)], p
    )


def _pxgcd(a, b, p):
    """(g, u, v) with u a + v b = g, g monic."""
    r0, r1 = _pp(a, p), _pp(b, p)
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, _psub(u0, _pmul(q, u1, p), p)
        v0, v1 = v1, _psub(v0, _pmul(q, v1, p), p)
    if r0:
        inv = pow(r0[-1], p - 2, p)
        r0 = [(c * inv) % p for c in r0]
        u0 = [(c * inv) % p for c in u0]
        v0 = [(c * inv) % p for c in v0]
    return r0, u0, v0


def _one_irreducible_factor(f, p, rng):
    """Some monic irreducible factor of a nonconstant polynomial."""
    f = _pp(f, p)
    inv = pow(f[-1], p - 2, p)
    f = [(c * inv) % p for c in f]
    if len(f) == 2:
        return f
    d = _pderiv(f, p)
    if not d:
        # f(x) = g(x)^p with matching coefficients over F_p
        g = [f[i] for i in range(0, len(f), p)]
        return _one_irreducible_factor(g, p, rng)
    g = _pgcd(f, d, p)
    if len(g) > 1:
        square_free = _pdivmod(f, g, p)[0]
        if len(square_free) > 1:
            return _one_irreducible_factor_squarefree(square_free, p, rng)
        return _one_irreducible_factor(g, p, rng)
    return _one_irreducible_factor_squarefree(f, p, rng)


def _one_irreducible_factor_squarefree(f, p, rng):
    if len(f) == 2:
        return f
    x = [0, 1]
    h = x
    deg = len(f) - 1
    for d in range(1, deg + 1):
        h = _ppowmod(h, p, f, p)
        g = _pgcd(_psub(h, x, p), f, p)
        if len(g) > 1:
            if len(g) - 1 == d:
                return g
            return _equal_degree_factor(g, d, p, rng)
        if 2 * (d + 1) > deg:
            break
    return f  # irreducible


def _equal_degree_factor(f, d, p, rng):
    """One irreducible factor of a square-free product of degree-d irreducibles."""
    if len(f) - 1 == d:
        return f
    while True:
        h = _pp([rng.randrange(p) for _ in range(len(f) - 1)], p)
        if len(h) <= 1:
            continue
        g = _pgcd(h, f, p)
        if not 1 < len(g) < len(f):
            if p == 2:
                t, acc = h, h
                for _ in range(d - 1):
                    acc = _pdivmod(_pmul(acc, acc, 2), f, 2)[1]
                    t = _psub(t, acc, 2)
            else:
                t = _psub(_ppowmod(h, (p ** d - 1) // 2, f, p), [1], p)
            g = _pgcd(t, f, p)
        if 1 < len(g) < len(f):
            part = g if len(g) <= (len(f) + 1) // 2 else _pdivmod(f, g, p)[0]
            return _equal_degree_factor(part, d, p, rng)


def factor_poly(poly, p, rng):
    """Primary factorization over F_p: list of (monic irreducible, multiplicity)."""
    f = _pp(poly, p)
    inv = pow(f[-1], p - 2, p)
    f = [(c * inv) % p for c in f]
    out = []
    while len(f) > 1:
        g = _one_irreducible_factor(f, p, rng)
        m = 0
        while True:
            q, r = _pdivmod(f, g, p)
            if r:
                break
            f = q if q else [1]
            m += 1
        out.append((g, m))
    return out


# -- indecomposability and decomposition ------------------------------------------


def _quotient_is_field(alg, rad):
    """Whether End/rad is commutative with exactly one simple factor."""
    p = alg.p
    pivots, radrows = rref([list(r) for r in rad], p)
    pivset = set(pivots)
    comp_idx = [i for i in range(alg.dim) if i not in pivset]
    qdim = len(comp_idx)
    if qdim == 0:
        return False

    def reduce_mod(vec):
        vec = [x % p for x in vec]
        for piv, row in zip(pivots, radrows):
            if vec[piv]:
                f = vec[piv]
                vec = [(x - f * y) % p for x, y in zip(vec, row)]
        return vec

    def to_q(vec):
        vec = reduce_mod(vec)
        return [vec[i] for i in comp_idx]

    def from_q(qvec):
        vec = [0] * alg.dim
        for c, i in zip(qvec, comp_idx):
            vec[i] = c % p
        return vec

    def qmul(u, v):
        mu = alg.element(from_q(u))
        mv = alg.element(from_q(v))
        return to_q(alg.coords(_mat_mul(mu, mv, p)))

    units = [[1 if j == i else 0 for j in range(qdim)] for i in range(qdim)]
    # commutativity on basis pairs
    for i in range(qdim):
        for j in range(i + 1, qdim):
            if qmul(units[i], units[j]) != qmul(units[j], units[i]):
                return False
    # Berlekamp count of simple factors: fixed space of x -> x^p
    rows = []
    for i in range(qdim):
        xp = units[i]
        acc = units[i]
        for _ in range(p - 1):
            acc = qmul(acc, xp)
        rows.append([(a - b) % p for a, b in zip(acc, units[i])])
    fixed = left_nullspace(rows, p, width=qdim)
    return len(fixed) == 1


def _idempotent_exhaustive(alg):
    """Scan all algebra elements for a nontrivial idempotent."""
    p = alg.p
    ident = _identity(alg.amb)
    id_coords = alg.coords(ident)
    total = p ** alg.dim
    for code in range(total):
        coeffs = [(code // p ** i) % p for i in range(alg.dim)]
        if not any(coeffs) or coeffs == id_coords:
            continue
        e = alg.element(coeffs)
        if _mat_eq_zero(_psub_mat(_mat_mul(e, e, p), e, p)):
            return coeffs
    return None


def _psub_mat(a, b, p):
    return [[(x - y) % p for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def is_indecomposable(rep):
    """End(M) is local: no idempotents besides 0 and 1."""
    if rep.dim() == 0:
        return False
    alg = EndAlgebra(rep)
    if alg.dim == 1:
        return True
    if (
        alg.dim <= EXHAUSTIVE_END_DIM
        and rep.field.q <= EXHAUSTIVE_FIELD
        and alg.p ** alg.dim <= 1 << 16
    ):
        return _idempotent_exhaustive(alg) is None
    rad = radical_basis(alg)
    return _quotient_is_field(alg, rad)


def _splitting_idempotent_from(alg, coeffs, rng):
    """Try to build a nontrivial idempotent from one algebra element."""
    p = alg.p
    x = alg.element(coeffs)
    mp = min_poly(x, p)
    facs = factor_poly(mp, p, rng)
    if len(facs) < 2:
        return None
    g1, m1 = facs[0]
    g1m = g1
    for _ in range(m1 - 1):
        g1m = _pmul(g1m, g1, p)
    g2 = _pdivmod(mp, g1m, p)[0]
    _, u, v = _pxgcd(g1m, g2, p)
    # e = (v g2)(x) is the projector onto ker(g1m(x))
    e_poly = _pmul(v, g2, p)
    e = _poly_eval_matrix(e_poly, x, p)
    if _mat_eq_zero(e) or _mat_eq_zero(_psub_mat(e, _identity(alg.amb), p)):
        return None
    if not _mat_eq_zero(_psub_mat(_mat_mul(e, e, p), e, p)):
        return None
    return e


def _poly_eval_matrix(poly, x, p):
    nn = len(x)
    out = [[0] * nn for _ in range(nn)]
    power = _identity(nn)
    for c in poly:
        if c % p:
            out = _mat_add(out, [[(c * y) % p for y in row] for row in power], p)
        power = _mat_mul(power, x, p)
    return out


def _find_splitting_idempotent(rep, alg):
    rng = random.Random(_seed())
    candidates = []
    for i in range(alg.dim):
        candidates.append([1 if j == i else 0 for j in range(alg.dim)])
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            candidates.append([1 if k in (i, j) else 0 for k in range(alg.dim)])
    for cand in candidates:
        e = _splitting_idempotent_from(alg, cand, rng)
        if e is not None:
            return e
    for _ in range(2000):
        cand = [rng.randrange(alg.p) for _ in range(alg.dim)]
        if not any(cand):
            continue
        e = _splitting_idempotent_from(alg, cand, rng)
        if e is not None:
            return e
    if alg.p ** alg.dim <= 1 << 16:
        coeffs = _idempotent_exhaustive(alg)
        if coeffs is not None:
            return alg.element(coeffs)
    raise ArithmeticError("no splitting idempotent found for a decomposable module")


def _k_row_basis(field, mat):
    """Independent rows spanning the K-row space, in echelon form."""
    rows = [list(r) for r in mat.rows]
    basis = []
    pivots = []
    for row in rows:
        row = list(row)
        for piv, b in zip(pivots, basis):
            if row[piv]:
                f = row[piv]
                row = [x - f * y for x, y in zip(row, b)]
        piv = next((i for i, x in enumerate(row) if x), None)
        if piv is None:
            continue
        inv = row[piv].inverse()
        row = [inv * x for x in row]
        basis.append(row)
        pivots.append(piv)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return Matrix(field, [basis[i] for i in order], len(basis), mat.ncols)


def _split_by_idempotent(rep, e_flat):
    """The two summands cut out by an idempotent given on prime coordinates."""
    field = rep.field
    n = field.n
    pres = rep.pres
    offsets = {}
    total = 0
    for v in pres.vertices:
        offsets[v] = total
        total += rep.dims[v] * n
    out = []
    for use_complement in (False, True):
        spaces = {}
        for v in pres.vertices:
            d = rep.dims[v]
            rows = []
            for i in range(d):
                krow = []
                for j in range(d):
                    # read the K-entry back off the prime block
                    block = [
                        e_flat[offsets[v] + i * n + a][offsets[v] + j * n + b]
                        for a in range(n)
                        for b in range(n)
                    ]
                    krow.append(_k_entry_from_block(field, block))
                rows.append(krow)
            mat = Matrix(field, rows, d, d)
            if use_complement:
                mat = Matrix.identity(field, d) - mat
            spaces[v] = _k_row_basis(field, mat)
        out.append(sub_representation(rep, spaces))
    return out


def _k_entry_from_block(field, block):
    """Recover the K-matrix entry of a K-linear map from its n x n prime block."""
    n = field.n
    # the block's first row is the image of the basis coefficient vector e_0,
    # i.e. the coefficients of 1 * entry
    first = block[:n]
    return field.el(list(first))


def brute_decompose(rep, limit=BRUTE_LIMIT):
    """Indecomposable summands by recursive idempotent splitting."""
    if rep.prime_dim() > limit:
        raise TooLarge(f"module of prime dimension {rep.prime_dim()} exceeds {limit}")
    if rep.dim() == 0:
        return []
    if is_indecomposable(rep):
        return [rep]
    alg = EndAlgebra(rep)
    e = _find_splitting_idempotent(rep, alg)
    part_a, part_b = _split_by_idempotent(rep, e)
    if part_a.dim() == 0 or part_b.dim() == 0:
        raise ArithmeticError("idempotent failed to split the module")
    return brute_decompose(part_a, limit) + brute_decompose(part_b, limit)


def _nilpotent_morphism(m, rep):
    for mat in m.values():
        power = Matrix.identity(rep.field, mat.nrows)
        for _ in range(mat.nrows):
            power = power @ mat
        if not power.is_zero():
            return False
    return True


def _indec_isomorphic(m1, m2):
    if m1.dims != m2.dims:
        return False
    if m1.dim() == 0:
        return True
    h12 = hom_space(m1, m2)
    h21 = hom_space(m2, m1)
    for f in h12.basis:
        for g in h21.basis:
            comp = compose_morphisms(f, g)
            if not _nilpotent_morphism(comp, m1):
                return True
    return False


def are_isomorphic(m1, m2, tries=64):
    """Isomorphism test: random invertible search, then matched decompositions."""
    if m1.pres is not m2.pres or m1.dims != m2.dims:
        return False
    if m1.dim() == 0:
        return True
    h12 = hom_space(m1, m2)
    if h12.dim == 0:
        return False
    rng = random.Random(_seed())
    p = m1.field.p
    for _ in range(tries):
        coeffs = [rng.randrange(p) for _ in range(h12.dim)]
        if not any(coeffs):
            continue
        phi = _combine_morphisms(h12, coeffs, m1.field)
        if morphism_invertible(phi):
            return True
    if m1.prime_dim() <= BRUTE_LIMIT and m2.prime_dim() <= BRUTE_LIMIT:
        return _match_summands(brute_decompose(m1), brute_decompose(m2))
    return False


def _combine_morphisms(hs, coeffs, field):
    out = {}
    for v in hs.source.dims:
        acc = Matrix.zeros(field, hs.source.dims[v], hs.target.dims[v])
        for c, b in zip(coeffs, hs.basis):
            if c % field.p:
                acc = acc + b[v].scale(field.el(c))
        out[v] = acc
    return out


def _match_summands(parts1, parts2):
    if len(parts1) != len(parts2):
        return False
    remaining = list(parts2)
    for a in parts1:
        hit = next((i for i, b in enumerate(remaining) if _indec_isomorphic(a, b)), None)
        if hit is None:
            return False
        remaining.pop(hit)
    return True
