"""Independent reference: exterior algebra on six real-indexed generators, cohomology via sympy ranks.

Generators 0, 1, 2 are ω^1..ω^3 and 3, 4, 5 their conjugates.  Nothing here is shared with bcnil.
"""
from itertools import combinations

import sympy as sp

I = sp.I


def _wedge_gens(a, b):
    if set(a) & set(b):
        return 0, None
    seq = list(a) + list(b)
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1) ** inv, tuple(sorted(seq))


def wedge(x, y):
    out = {}
    for ka, ca in x.items():
        for kb, cb in y.items():
            s, k = _wedge_gens(ka, kb)
            if s:
                out[k] = out.get(k, 0) + s * ca * cb
    return {k: sp.nsimplify(sp.expand(v)) for k, v in out.items() if sp.expand(v) != 0}


def conj_form(x):
    out = {}
    for k, c in x.items():
        img = [g + 3 if g < 3 else g - 3 for g in k]
        s, key = _wedge_gens((), ())
        inv = sum(1 for i in range(len(img)) for j in range(i + 1, len(img)) if img[i] > img[j])
        out[tuple(sorted(img))] = (-1) ** inv * sp.conjugate(c)
    return out


class Oracle:
    def __init__(self, dw):
        """``dw``: three dicts mapping sorted generator tuples to sympy numbers (dω^1, dω^2, dω^3)."""
        self.dgen = list(dw) + [conj_form(x) for x in dw]

    def d_mono(self, key):
        out = {}
        for pos, g in enumerate(key):
            left = {key[:pos]: 1}
            right = {key[pos + 1:]: 1}
            term = wedge(wedge(left, self.dgen[g]), right)
            for k, c in term.items():
                out[k] = out.get(k, 0) + (-1) ** pos * c
        return {k: v for k, v in out.items() if sp.expand(v) != 0}

    @staticmethod
    def bidegree(key):
        return sum(1 for g in key if g < 3), sum(1 for g in key if g >= 3)

    @staticmethod
    def basis(p, q):
        return [tuple(sorted(h + tuple(a + 3 for a in b)))
                for h in combinations(range(3), p) for b in combinations(range(3), q)]

    def matrix(self, src, tgt, part=None):
        """Matrix of d (or its (a,b)-shifted part) from span(src) to span(tgt)."""
        idx = {k: i for i, k in enumerate(tgt)}
        m = sp.zeros(len(tgt), len(src))
        for j, k in enumerate(src):
            for key, c in self.d_mono(k).items():
                if key in idx:
                    m[idx[key], j] += c
        return m

    def rank(self, m):
        if 0 in m.shape:
            return 0
        return m.rank(simplify=True)

    def _ops(self, p, q):
        """(∂, ∂̄) matrices out of Λ^{p,q}."""
        src = self.basis(p, q)
        dl = self.matrix(src, self.basis(p + 1, q)) if p < 3 else sp.zeros(0, len(src))
        db = self.matrix(src, self.basis(p, q + 1)) if q < 3 else sp.zeros(0, len(src))
        return dl, db

    def bott_chern(self, p, q):
        dl, db = self._ops(p, q)
        n = len(self.basis(p, q))
        kernel = n - self.rank(dl.col_join(db))
        if p == 0 or q == 0:
            image = 0
        else:
            src = self.basis(p - 1, q - 1)
            dl1 = self.matrix(src, self.basis(p, q - 1))
            db2 = self.matrix(self.basis(p, q - 1), self.basis(p, q))
            image = self.rank(db2 * dl1)
        return kernel - image

    def aeppli(self, p, q):
        n = len(self.basis(p, q))
        if p < 3 and q < 3:
            dl = self.matrix(self.basis(p, q), self.basis(p + 1, q))
            db = self.matrix(self.basis(p + 1, q), self.basis(p + 1, q + 1))
            kernel = n - self.rank(db * dl)
        else:
            kernel = n
        imgs = []
        if p > 0:
            imgs.append(self.matrix(self.basis(p - 1, q), self.basis(p, q)))
        if q > 0:
            imgs.append(self.matrix(self.basis(p, q - 1), self.basis(p, q)))
        image = self.rank(sp.Matrix.hstack(*imgs)) if imgs else 0
        return kernel - image

    def dolbeault(self, p, q):
        n = len(self.basis(p, q))
        kernel = n - (self.rank(self.matrix(self.basis(p, q), self.basis(p, q + 1))) if q < 3 else 0)
        image = self.rank(self.matrix(self.basis(p, q - 1), self.basis(p, q))) if q > 0 else 0
        return kernel - image

    def de_rham(self, k):
        def tot(j):
            return [key for key in combinations(range(6), j)] if 0 <= j <= 6 else []
        n = len(tot(k))
        kernel = n - (self.rank(self.matrix(tot(k), tot(k + 1))) if k < 6 else 0)
        image = self.rank(self.matrix(tot(k - 1), tot(k))) if k > 0 else 0
        return kernel - image

    # -------------------------------------------------------------- exact-sequence pieces

    def _block(self, src, tgt):
        return self.matrix(src, tgt)

    def e02(self, r):
        """dim E_r^{0,2} by the zig-zag description, for r = 1, 2, 3 (stable from 3 on)."""
        b02, b11, b20 = self.basis(0, 2), self.basis(1, 1), self.basis(2, 0)
        n02, n11, n20 = len(b02), len(b11), len(b20)
        # unknowns (α02, α11, α20); constraints by bidegree of the image
        eqs = []
        eqs.append(sp.Matrix.hstack(self._block(b02, self.basis(0, 3)), sp.zeros(1, n11 + n20)))
        if r >= 2:
            eqs.append(sp.Matrix.hstack(self._block(b02, self.basis(1, 2)), self._block(b11, self.basis(1, 2)),
                                        sp.zeros(9, n20)))
        if r >= 3:
            eqs.append(sp.Matrix.hstack(sp.zeros(9, n02), self._block(b11, self.basis(2, 1)),
                                        self._block(b20, self.basis(2, 1))))
        system = sp.Matrix.vstack(*eqs)
        sols = system.nullspace(simplify=True)
        proj = sp.Matrix.hstack(*[v[:n02, :] for v in sols]) if sols else sp.zeros(n02, 0)
        numerator = self.rank(proj)
        denominator = self.rank(self._block(self.basis(0, 1), b02))
        return numerator - denominator

    def z11(self):
        """dim (ker d ∩ Λ^{1,1} ∩ dΛ^1) / ∂∂̄Λ^0."""
        one = [k for k in combinations(range(6), 1)]
        two = [k for k in combinations(range(6), 2)]
        dmat = self.matrix(one, two)
        mixed = [i for i, k in enumerate(two) if self.bidegree(k) != (1, 1)]
        # combinations of dΛ^1 with no (2,0) or (0,2) part
        sols = dmat.extract(mixed, list(range(6))).nullspace(simplify=True)
        exact_mixed = self.rank(sp.Matrix.hstack(*[dmat * v for v in sols])) if sols else 0
        return exact_mixed - 0  # ∂∂̄ vanishes on constants

    def v_rank(self):
        """Rank of H^2 -> (Λ^{2,0}/∂Λ^{1,0}) ⊕ (Λ^{0,2}/∂̄Λ^{0,1}) via the outer parts of closed forms."""
        two = [k for k in combinations(range(6), 2)]
        closed = self.matrix(two, [k for k in combinations(range(6), 3)]).nullspace(simplify=True)
        outer = [i for i, k in enumerate(two) if self.bidegree(k) in ((2, 0), (0, 2))]
        idx = {two[i]: j for j, i in enumerate(outer)}
        exact = []
        for src, tgt_deg in ((self.basis(1, 0), (2, 0)), (self.basis(0, 1), (0, 2))):
            for key in src:
                col = sp.zeros(len(outer), 1)
                for k, c in self.d_mono(key).items():
                    if self.bidegree(k) == tgt_deg:
                        col[idx[k]] += c
                exact.append(col)
        w = sp.Matrix.hstack(*exact)
        images = sp.Matrix.hstack(*[v.extract(outer, [0]) for v in closed]) if closed else sp.zeros(len(outer), 0)
        return self.rank(sp.Matrix.hstack(w, images)) - self.rank(w)
