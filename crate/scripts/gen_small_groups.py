#!/usr/bin/env python3
"""Generate Cayley-table fixtures for every group of order <= 23.

Candidates come from explicit constructions (cyclic, direct, semidirect and
dicyclic products).  They are deduplicated by a brute-force isomorphism test
and the number of classes per order is checked against the known counts
before any file is written.

Usage: gen_small_groups.py OUT_DIR
"""
import itertools
import os
import sys

KNOWN_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
                11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5,
                19: 1, 20: 5, 21: 2, 22: 2, 23: 1}


class Group:
    def __init__(self, name, elements, mul):
        # elements[0] must be the identity
        self.name = name
        self.n = len(elements)
        index = {e: i for i, e in enumerate(elements)}
        self.table = [[index[mul(a, b)] for b in elements] for a in elements]
        assert all(self.table[0][i] == i and self.table[i][0] == i for i in range(self.n))
        self.check()

    def check(self):
        t = self.table
        n = self.n
        for row in t:
            assert sorted(row) == list(range(n))
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    assert t[ab][c] == t[a][t[b][c]]

    def order_of(self, x):
        k, y = 1, x
        while y != 0:
            y = self.table[y][x]
            k += 1
        return k

    def invariant(self):
        n = self.n
        orders = sorted(self.order_of(x) for x in range(n))
        center = sum(1 for x in range(n) if all(self.table[x][y] == self.table[y][x] for y in range(n)))
        squares = len({self.table[x][x] for x in range(n)})
        return (n, tuple(orders), center, squares)

    def generators(self):
        gens = []
        closure = {0}
        for x in sorted(range(self.n), key=lambda x: -self.order_of(x)):
            if x in closure:
                continue
            gens.append(x)
            closure = self.close(gens)
            if len(closure) == self.n:
                break
        return gens

    def close(self, gens):
        seen = {0}
        queue = [0]
        for x in queue:
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen


def isomorphic(g1, g2):
    if g1.invariant() != g2.invariant():
        return False
    gens = g1.generators()
    # words for each element of g1 in terms of gens (BFS)
    parent = {0: None}
    queue = [0]
    for x in queue:
        for i, g in enumerate(gens):
            y = g1.table[x][g]
            if y not in parent:
                parent[y] = (x, i)
                queue.append(y)
    candidates = [[y for y in range(g2.n) if g2.order_of(y) == g1.order_of(g)] for g in gens]
    for images in itertools.product(*candidates):
        phi = {0: 0}
        for x in queue[1:]:
            px, i = parent[x]
            phi[x] = g2.table[phi[px]][images[i]]
        if len(set(phi.values())) != g1.n:
            continue
        ok = all(phi[g1.table[a][b]] == g2.table[phi[a]][phi[b]]
                 for a in range(g1.n) for b in range(g1.n))
        if ok:
            return True
    return False


def cyclic(n):
    return Group(f"c{n}", list(range(n)), lambda a, b: (a + b) % n)


def direct(g, h, name=None):
    els = [(a, b) for a in range(g.n) for b in range(h.n)]
    return Group(name or f"{g.name}x{h.name}", els,
                 lambda x, y: (g.table[x[0]][y[0]], h.table[x[1]][y[1]]))


def semidirect_cyclic(m, n, r, name):
    """C_m x| C_n with the generator of C_n acting as a -> a^r."""
    assert pow(r, n, m) == 1 % m
    els = [(a, b) for b in range(n) for a in range(m)]
    return Group(name, els, lambda x, y: ((x[0] + pow(r, x[1], m) * y[0]) % m, (x[1] + y[1]) % n))


def dicyclic(m, name):
    """<a, x | a^{2m}, x^2 = a^m, x^-1 a x = a^-1>, order 4m."""
    n = 2 * m

    def mul(u, v):
        i, j = u
        k, l = v
        if j == 0:
            return ((i + k) % n, l)
        if l == 0:
            return ((i - k) % n, 1)
        return ((i - k + m) % n, 0)
    els = [(i, j) for j in range(2) for i in range(n)]
    return Group(name, els, mul)


def semidirect_matrix(mods, mat, name):
    """(Z_mods[0] x ... ) x| C_2, the C_2 acting by an integer matrix of order <= 2."""
    k = len(mods)

    def act(v):
        return tuple(sum(mat[i][j] * v[j] for j in range(k)) % mods[i] for i in range(k))

    def mul(x, y):
        v, s = x
        w, t = y
        w2 = act(w) if s else w
        return (tuple((v[i] + w2[i]) % mods[i] for i in range(k)), (s + t) % 2)
    zero = tuple(0 for _ in mods)
    vecs = [zero] + [v for v in itertools.product(*[range(m) for m in mods]) if v != zero]
    els = [(v, s) for s in range(2) for v in vecs]
    return Group(name, els, mul)


def perm_group(name, gens, degree):
    def compose(p, q):  # apply p then q
        return tuple(q[p[i]] for i in range(degree))
    ident = tuple(range(degree))
    els = [ident]
    seen = {ident}
    for x in els:
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                els.append(y)
    return Group(name, els, compose)


def cycles(degree, *cs):
    p = list(range(degree))
    for c in cs:
        for i in range(len(c)):
            p[c[i] - 1] = c[(i + 1) % len(c)] - 1
    return tuple(p)


def candidates():
    out = []
    for n in range(1, 24):
        out.append(cyclic(n))
    c = {n: cyclic(n) for n in range(1, 13)}
    out += [
        direct(c[2], c[2], "c2xc2"),
        direct(c[2], c[4], "c2xc4"),
        direct(direct(c[2], c[2]), c[2], "c2xc2xc2"),
        direct(c[3], c[3], "c3xc3"),
        direct(c[2], c[6], "c2xc6"),
        direct(c[3], c[6], "c3xc6"),
        direct(c[2], c[10], "c2xc10"),
        direct(c[4], c[4], "c4xc4"),
        direct(c[2], c[8], "c2xc8"),
        direct(direct(c[2], c[2]), c[4], "c2xc2xc4"),
        direct(direct(c[2], c[2]), direct(c[2], c[2]), "c2xc2xc2xc2"),
    ]
    for n in range(3, 12):
        out.append(semidirect_cyclic(n, 2, n - 1, f"d{2 * n}"))
    q8 = dicyclic(2, "q8")
    d8 = semidirect_cyclic(4, 2, 3, "d8")
    s3 = semidirect_cyclic(3, 2, 2, "s3")
    out += [
        q8, d8, s3,
        dicyclic(3, "dic12"),
        dicyclic(4, "q16"),
        dicyclic(5, "dic20"),
        perm_group("a4", [cycles(4, (1, 2, 3)), cycles(4, (1, 2), (3, 4))], 4),
        semidirect_cyclic(8, 2, 5, "m16"),
        semidirect_cyclic(8, 2, 3, "sd16"),
        semidirect_cyclic(4, 4, 3, "c4_rtimes_c4"),
        direct(d8, c[2], "d8xc2"),
        direct(q8, c[2], "q8xc2"),
        semidirect_matrix([4, 2], [[1, 0], [1, 1]], "c4xc2_rtimes_c2"),
        semidirect_matrix([4, 2], [[1, 2], [0, 1]], "c4xc2_rtimes_c2_b"),
        semidirect_matrix([4, 2], [[3, 0], [0, 1]], "c4xc2_rtimes_c2_c"),
        semidirect_matrix([2, 2, 2], [[1, 0, 0], [0, 1, 0], [0, 1, 1]], "c2^3_rtimes_c2"),
        semidirect_matrix([2, 4], [[1, 0], [2, 3]], "c2xc4_rtimes_c2_e"),
        semidirect_cyclic(9, 2, 8, "d18"),
        direct(s3, c[3], "s3xc3"),
        perm_group("c3xc3_rtimes_c2", [cycles(6, (1, 2, 3)), cycles(6, (4, 5, 6)),
                                        cycles(6, (2, 3), (5, 6))], 6),
        semidirect_cyclic(5, 4, 2, "f20"),
        semidirect_cyclic(7, 3, 2, "c7_rtimes_c3"),
    ]
    return out


def main():
    out_dir = sys.argv[1]
    classes = {}
    for g in candidates():
        if g.n > 23:
            continue
        bucket = classes.setdefault(g.n, [])
        if not any(isomorphic(g, h) for h in bucket):
            bucket.append(g)
    for n, want in KNOWN_COUNTS.items():
        got = len(classes.get(n, []))
        if got != want:
            raise SystemExit(f"order {n}: found {got} classes, expected {want}")
    os.makedirs(out_dir, exist_ok=True)
    for n in sorted(classes):
        for i, g in enumerate(classes[n]):
            path = os.path.join(out_dir, f"order{n:02d}_{i + 1:02d}_{g.name}.tbl")
            with open(path, "w") as f:
                f.write(f"{g.n}\n")
                for row in g.table:
                    f.write(" ".join(map(str, row)) + "\n")
    print(sum(len(v) for v in classes.values()), "groups written")


if __name__ == "__main__":
    main()
