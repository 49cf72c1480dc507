#!/usr/bin/env python3
"""Generate molecular integral fixtures (FCIDUMP + dipole files) and scan configs.

Produces STO-6G integrals over canonical RHF orbitals (H2, H4 rectangular,
H4 linear) and state-specific CASSCF(2,2) orbitals (BeH2 insertion), written
as FCIDUMP files plus dipole-integral files, together with the JSON run
configs used by the scan driver.

Conventions recorded here and in fixtures/README.md:
  - no frozen core anywhere; core_energy is the nuclear repulsion only
  - dipole gauge origin: center of mass (masses: H 1.00782503207, Be 9.0121831)
  - ORBSYM uses Molpro irrep numbering (XOR-composable on label-1)
  - orbital order: ascending (generalized) Fock diagonal, global
  - STO-6G from a least-squares fit of six Gaussians to Slater orbitals,
    scale factors H zeta1s=1.24, Be zeta1s=3.68, zeta2sp=1.15
"""

import json
import math
import os
import sys
import numpy as np
from scipy import special, optimize, linalg

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXDIR = os.path.join(ROOT, "fixtures")
CFGDIR = os.path.join(ROOT, "configs")

ANGSTROM = 1.0 / 0.52917721092  # bohr per angstrom
MASS = {"H": 1.00782503207, "Be": 9.0121831}
CHARGE = {"H": 1.0, "Be": 4.0}


# ----------------------------------------------------------------------
# Boys function and McMurchie-Davidson machinery
# ----------------------------------------------------------------------

def boys(m, T):
    T = np.asarray(T, dtype=float)
    scalar = T.ndim == 0
    T = np.atleast_1d(T)
    out = np.empty_like(T)
    small = T < 1e-13
    out[small] = 1.0 / (2 * m + 1)
    Tb = T[~small]
    out[~small] = special.gamma(m + 0.5) * special.gammainc(m + 0.5, Tb) / (2 * Tb ** (m + 0.5))
    return out[0] if scalar else out


def boys_array(L, T):
    """F_0..F_L at scalar T, downward recursion from F_L."""
    F = np.empty(L + 1)
    F[L] = boys(L, T)
    eT = math.exp(-T)
    for n in range(L - 1, -1, -1):
        F[n] = (2.0 * T * F[n + 1] + eT) / (2 * n + 1)
    return F


def hermite_E(i, j, t, Q, a, b):
    """Hermite expansion coefficient E_t^{ij}; Q = Ax - Bx."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == 0 and j == 0 and t == 0:
        return math.exp(-q * Q * Q)
    if j == 0:
        return (hermite_E(i - 1, j, t - 1, Q, a, b) / (2 * p)
                - (q * Q / a) * hermite_E(i - 1, j, t, Q, a, b)
                + (t + 1) * hermite_E(i - 1, j, t + 1, Q, a, b))
    return (hermite_E(i, j - 1, t - 1, Q, a, b) / (2 * p)
            + (q * Q / b) * hermite_E(i, j - 1, t, Q, a, b)
            + (t + 1) * hermite_E(i, j - 1, t + 1, Q, a, b))


def prim_norm(alpha, lmn):
    l, m, n = lmn
    df = lambda k: 1.0 if k <= 0 else float(np.prod(np.arange(2 * k - 1, 0, -2)))
    return ((2 * alpha / math.pi) ** 0.75
            * (4 * alpha) ** ((l + m + n) / 2.0)
            / math.sqrt(df(l) * df(m) * df(n)))


class AO:
    """Contracted Cartesian Gaussian."""

    def __init__(self, center, lmn, exps, coefs, atom_index):
        self.center = np.asarray(center, float)
        self.lmn = tuple(lmn)
        self.exps = np.asarray(exps, float)
        raw = np.asarray(coefs, float) * np.array([prim_norm(a, lmn) for a in exps])
        self.coefs = raw
        self.atom_index = atom_index
        # contracted self-overlap -> normalize
        s = 0.0
        for ca, aa in zip(self.coefs, self.exps):
            for cb, ab in zip(self.coefs, self.exps):
                s += ca * cb * _prim_overlap(aa, self.lmn, self.center, ab, self.lmn, self.center)
        self.coefs = self.coefs / math.sqrt(s)


def _prim_overlap(a, lmn1, A, b, lmn2, B):
    p = a + b
    out = (math.pi / p) ** 1.5
    for k in range(3):
        out *= hermite_E(lmn1[k], lmn2[k], 0, A[k] - B[k], a, b)
    return out


def overlap_matrix(aos):
    n = len(aos)
    S = np.zeros((n, n))
    for i, u in enumerate(aos):
        for j, v in enumerate(aos):
            if j > i:
                continue
            s = 0.0
            for ca, aa in zip(u.coefs, u.exps):
                for cb, ab in zip(v.coefs, v.exps):
                    s += ca * cb * _prim_overlap(aa, u.lmn, u.center, ab, v.lmn, v.center)
            S[i, j] = S[j, i] = s
    return S


def _prim_kinetic(a, lmn1, A, b, lmn2, B):
    p = a + b
    pref = (math.pi / p) ** 1.5

    def S1(ii, jj, k):
        return hermite_E(ii, jj, 0, A[k] - B[k], a, b)

    def K1(ii, jj, k):
        t = -2.0 * b * b * S1(ii, jj + 2, k) + b * (2 * jj + 1) * S1(ii, jj, k)
        if jj >= 2:
            t -= 0.5 * jj * (jj - 1) * S1(ii, jj - 2, k)
        return t

    i1, m1, n1 = lmn1
    i2, m2, n2 = lmn2
    val = (K1(i1, i2, 0) * S1(m1, m2, 1) * S1(n1, n2, 2)
           + S1(i1, i2, 0) * K1(m1, m2, 1) * S1(n1, n2, 2)
           + S1(i1, i2, 0) * S1(m1, m2, 1) * K1(n1, n2, 2))
    return pref * val


def kinetic_matrix(aos):
    n = len(aos)
    T = np.zeros((n, n))
    for i, u in enumerate(aos):
        for j, v in enumerate(aos):
            if j > i:
                continue
            s = 0.0
            for ca, aa in zip(u.coefs, u.exps):
                for cb, ab in zip(v.coefs, v.exps):
                    s += ca * cb * _prim_kinetic(aa, u.lmn, u.center, ab, v.lmn, v.center)
            T[i, j] = T[j, i] = s
    return T


def _prim_dipole(a, lmn1, A, b, lmn2, B, origin, axis):
    p = a + b
    pref = (math.pi / p) ** 1.5

    def S1(ii, jj, k):
        return hermite_E(lmn1[k] if k != axis else ii,
                         lmn2[k] if k != axis else jj,
                         0, A[k] - B[k], a, b)

    i1 = lmn1[axis]
    i2 = lmn2[axis]
    # (x - Ox) = (x - Ax) + (Ax - Ox); raising the bra index adds (x - Ax)
    mu = hermite_E(i1 + 1, i2, 0, A[axis] - B[axis], a, b) \
        + (A[axis] - origin[axis]) * hermite_E(i1, i2, 0, A[axis] - B[axis], a, b)
    val = mu
    for k in range(3):
        if k == axis:
            continue
        val *= hermite_E(lmn1[k], lmn2[k], 0, A[k] - B[k], a, b)
    return pref * val


def dipole_matrix(aos, origin, axis):
    n = len(aos)
    M = np.zeros((n, n))
    for i, u in enumerate(aos):
        for j, v in enumerate(aos):
            if j > i:
                continue
            s = 0.0
            for ca, aa in zip(u.coefs, u.exps):
                for cb, ab in zip(v.coefs, v.exps):
                    s += ca * cb * _prim_dipole(aa, u.lmn, u.center, ab, v.lmn, v.center, origin, axis)
            M[i, j] = M[j, i] = s
    return M


def _R_herm(t, u, v, n, p, PC, memo):
    key = (t, u, v, n)
    if key in memo:
        return memo[key]
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == 0 and u == 0 and v == 0:
        val = (-2.0 * p) ** n * memo["F"][n]
    elif t == 0 and u == 0:
        val = PC[2] * _R_herm(0, 0, v - 1, n + 1, p, PC, memo)
        if v > 1:
            val += (v - 1) * _R_herm(0, 0, v - 2, n + 1, p, PC, memo)
    elif t == 0:
        val = PC[1] * _R_herm(0, u - 1, v, n + 1, p, PC, memo)
        if u > 1:
            val += (u - 1) * _R_herm(0, u - 2, v, n + 1, p, PC, memo)
    else:
        val = PC[0] * _R_herm(t - 1, u, v, n + 1, p, PC, memo)
        if t > 1:
            val += (t - 1) * _R_herm(t - 2, u, v, n + 1, p, PC, memo)
    memo[key] = val
    return val


def _prim_nuclear(a, lmn1, A, b, lmn2, B, C):
    p = a + b
    P = (a * A + b * B) / p
    PC = P - C
    L = sum(lmn1) + sum(lmn2)
    memo = {"F": boys_array(L, p * float(PC @ PC))}
    val = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        Ex = hermite_E(lmn1[0], lmn2[0], t, A[0] - B[0], a, b)
        for u in range(lmn1[1] + lmn2[1] + 1):
            Ey = hermite_E(lmn1[1], lmn2[1], u, A[1] - B[1], a, b)
            for v in range(lmn1[2] + lmn2[2] + 1):
                Ez = hermite_E(lmn1[2], lmn2[2], v, A[2] - B[2], a, b)
                val += Ex * Ey * Ez * _R_herm(t, u, v, 0, p, PC, memo)
    return 2.0 * math.pi / p * val


def nuclear_matrix(aos, atoms):
    n = len(aos)
    V = np.zeros((n, n))
    for i, u in enumerate(aos):
        for j, v in enumerate(aos):
            if j > i:
                continue
            s = 0.0
            for sym, R in atoms:
                Z = CHARGE[sym]
                for ca, aa in zip(u.coefs, u.exps):
                    for cb, ab in zip(v.coefs, v.exps):
                        s -= Z * ca * cb * _prim_nuclear(aa, u.lmn, u.center, ab, v.lmn, v.center, np.asarray(R))
            V[i, j] = V[j, i] = s
    return V


def _prim_eri(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D):
    p = a + b
    q = c + d
    omega = p * q / (p + q)
    P = (a * A + b * B) / p
    Q = (c * C + d * D) / q
    PQ = P - Q
    L = sum(lmn1) + sum(lmn2) + sum(lmn3) + sum(lmn4)
    memo = {"F": boys_array(L, omega * float(PQ @ PQ))}
    val = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        E1x = hermite_E(lmn1[0], lmn2[0], t, A[0] - B[0], a, b)
        for u in range(lmn1[1] + lmn2[1] + 1):
            E1y = hermite_E(lmn1[1], lmn2[1], u, A[1] - B[1], a, b)
            for v in range(lmn1[2] + lmn2[2] + 1):
                E1z = hermite_E(lmn1[2], lmn2[2], v, A[2] - B[2], a, b)
                e1 = E1x * E1y * E1z
                if e1 == 0.0:
                    continue
                for tau in range(lmn3[0] + lmn4[0] + 1):
                    E2x = hermite_E(lmn3[0], lmn4[0], tau, C[0] - D[0], c, d)
                    for nu in range(lmn3[1] + lmn4[1] + 1):
                        E2y = hermite_E(lmn3[1], lmn4[1], nu, C[1] - D[1], c, d)
                        for phi in range(lmn3[2] + lmn4[2] + 1):
                            E2z = hermite_E(lmn3[2], lmn4[2], phi, C[2] - D[2], c, d)
                            e2 = E2x * E2y * E2z
                            if e2 == 0.0:
                                continue
                            val += e1 * e2 * ((-1) ** (tau + nu + phi)) \
                                * _R_herm(t + tau, u + nu, v + phi, 0, omega, PQ, memo)
    return val * 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))


def eri_tensor(aos):
    n = len(aos)
    g = np.zeros((n, n, n, n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1)]
    for pi, (i, j) in enumerate(pairs):
        for (k, l) in pairs[: pi + 1]:
            s = 0.0
            u, v, w, x = aos[i], aos[j], aos[k], aos[l]
            for ca, aa in zip(u.coefs, u.exps):
                for cb, ab in zip(v.coefs, v.exps):
                    for cc, ac in zip(w.coefs, w.exps):
                        for cd, ad in zip(x.coefs, x.exps):
                            s += ca * cb * cc * cd * _prim_eri(
                                aa, u.lmn, u.center, ab, v.lmn, v.center,
                                ac, w.lmn, w.center, ad, x.lmn, x.center)
            for (a1, b1) in ((i, j), (j, i)):
                for (c1, d1) in ((k, l), (l, k)):
                    g[a1, b1, c1, d1] = s
                    g[c1, d1, a1, b1] = s
    return g


# ----------------------------------------------------------------------
# STO-6G: least-squares fit of 6 Gaussians to Slater orbitals (zeta = 1)
# ----------------------------------------------------------------------

def _gauss_slater_int(n, a, zeta):
    """I_n = int_0^inf r^n exp(-a r^2 - zeta r) dr, by recursion."""
    t = zeta / (2.0 * math.sqrt(a))
    I0 = 0.5 * math.sqrt(math.pi / a) * math.exp(t * t) * special.erfc(t)
    I1 = (1.0 - zeta * I0) / (2.0 * a)
    vals = [I0, I1]
    for k in range(2, n + 1):
        vals.append(((k - 1) * vals[k - 2] - zeta * vals[k - 1]) / (2.0 * a))
    return vals[n]


def _sto_gauss_overlaps(alphas, n_sto, l):
    """Overlap vector <STO(n,l,zeta=1)|g_i> and Gaussian overlap matrix."""
    ng = len(alphas)

    def gnorm(a):
        # int r^(2l+2) e^{-2 a r^2} dr = (2l+1)!! sqrt(pi/(2a)) / (2 (4a))^(l+1)-ish
        df = 1.0
        for k in range(2 * l + 1, 0, -2):
            df *= k
        I = df * math.sqrt(math.pi) / (2 ** (l + 2) * (2 * a) ** (l + 1) * math.sqrt(2 * a))
        return 1.0 / math.sqrt(I)

    if l == 0 and n_sto == 1:
        nsto, rpow = 2.0, 2            # R_1s = 2 e^{-r}; integrand r^2
    elif n_sto == 2:
        nsto, rpow = 2.0 / math.sqrt(3.0), 3 + l   # R_2s/2p = (2/sqrt3) r e^{-r}
    else:
        raise ValueError
    b = np.empty(ng)
    for i, a in enumerate(alphas):
        b[i] = nsto * gnorm(a) * _gauss_slater_int(rpow + (l if n_sto == 1 else 0), a, 1.0)
    Smat = np.empty((ng, ng))
    for i, ai in enumerate(alphas):
        for j, aj in enumerate(alphas):
            df = 1.0
            for k in range(2 * l + 1, 0, -2):
                df *= k
            p = ai + aj
            I = df * math.sqrt(math.pi) / (2 ** (l + 2) * p ** (l + 1) * math.sqrt(p))
            Smat[i, j] = gnorm(ai) * gnorm(aj) * I
    return b, Smat


def _fit_quality(log_alphas, specs):
    """Maximized overlap of normalized Gaussian expansion with each STO."""
    alphas = np.exp(log_alphas)
    total = 0.0
    for (n_sto, l) in specs:
        b, S = _sto_gauss_overlaps(alphas, n_sto, l)
        try:
            c = np.linalg.solve(S, b)
            ov = float(b @ c) / math.sqrt(float(c @ S @ c))
        except np.linalg.LinAlgError:
            return 10.0
        if not np.isfinite(ov):
            return 10.0
        total += 1.0 - ov
    return total


def fit_sto6(specs, start):
    res = optimize.minimize(_fit_quality, np.log(np.asarray(start)), args=(specs,),
                            method="Nelder-Mead",
                            options={"maxiter": 20000, "xatol": 1e-12, "fatol": 1e-14})
    alphas = np.exp(res.x)
    coefs = []
    for (n_sto, l) in specs:
        b, S = _sto_gauss_overlaps(alphas, n_sto, l)
        c = np.linalg.solve(S, b)
        c = c / math.sqrt(float(c @ S @ c))
        coefs.append(c)
    order = np.argsort(-alphas)
    return alphas[order], [c[order] for c in coefs], res.fun


_STO6 = {}


def sto6_basis():
    """Fit STO-6G primitives once: 1s and shared-exponent 2s/2p sets."""
    if _STO6:
        return _STO6
    a1, (c1,), q1 = fit_sto6([(1, 0)], start=[23.1, 4.24, 1.19, 0.407, 0.158, 0.0651])
    a2, (c2s, c2p), q2 = fit_sto6([(2, 0), (2, 1)],
                                  start=[27.0, 4.9, 1.28, 0.42, 0.17, 0.066])
    assert q1 < 5e-5 and q2 < 5e-3, (q1, q2)
    _STO6["1s"] = (a1, c1)
    _STO6["2sp"] = (a2, c2s, c2p)
    return _STO6


def make_aos(atoms):
    """STO-6G AO list for a list of (symbol, xyz-bohr)."""
    b = sto6_basis()
    aos = []
    for ia, (sym, R) in enumerate(atoms):
        if sym == "H":
            z = 1.24
            a, c = b["1s"]
            aos.append(AO(R, (0, 0, 0), a * z * z, c, ia))
        elif sym == "Be":
            z1, z2 = 3.68, 1.15
            a, c = b["1s"]
            aos.append(AO(R, (0, 0, 0), a * z1 * z1, c, ia))
            a2, c2s, c2p = b["2sp"]
            aos.append(AO(R, (0, 0, 0), a2 * z2 * z2, c2s, ia))
            for lmn in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                aos.append(AO(R, lmn, a2 * z2 * z2, c2p, ia))
        else:
            raise ValueError(sym)
    return aos


# ----------------------------------------------------------------------
# Point-group machinery (abelian, diagonal +-1 operations only)
# ----------------------------------------------------------------------

D2H_GENS = [np.diag([-1., -1., 1.]), np.diag([-1., 1., -1.]), np.diag([-1., -1., -1.])]
# (C2z, C2y, i); Molpro numbering via character triples:
D2H_LABELS = {(1, 1, 1): 1, (-1, -1, -1): 2, (-1, 1, -1): 3, (1, -1, 1): 4,
              (1, -1, -1): 5, (-1, 1, 1): 6, (-1, -1, 1): 7, (1, 1, -1): 8}
D2H_NAMES = {1: "Ag", 2: "B3u", 3: "B2u", 4: "B1g", 5: "B1u", 6: "B2g", 7: "B3g", 8: "Au"}

C2V_GENS = [np.diag([-1., -1., 1.]), np.diag([-1., 1., 1.])]
# (C2z, sigma_yz)
C2V_LABELS = {(1, 1): 1, (-1, -1): 2, (-1, 1): 3, (1, -1): 4}
C2V_NAMES = {1: "A1", 2: "B1", 3: "B2", 4: "A2"}


def ao_symmetry_rep(aos, atoms, op):
    """Matrix of a (diagonal +-1) point-group operation in the AO basis."""
    n = len(aos)
    coords = np.array([R for _, R in atoms])
    mapped = coords @ op.T
    amap = []
    for R in mapped:
        d = np.linalg.norm(coords - R, axis=1)
        k = int(np.argmin(d))
        assert d[k] < 1e-8, "atoms not symmetric under op"
        amap.append(k)
    by_atom = {}
    for j, bo in enumerate(aos):
        by_atom.setdefault(bo.atom_index, []).append(j)
    D = np.zeros((n, n))
    for i, ao in enumerate(aos):
        sign = 1.0
        for k in range(3):
            if ao.lmn[k] % 2 == 1:
                sign *= op[k, k]
        pos = by_atom[ao.atom_index].index(i)
        j = by_atom[amap[ao.atom_index]][pos]
        assert aos[j].lmn == ao.lmn
        D[j, i] = sign
    return D


def salcs(aos, atoms, gens, labels):
    """Symmetry-adapted linear combinations; returns {irrep: columns}."""
    n = len(aos)
    reps = [ao_symmetry_rep(aos, atoms, g) for g in gens]
    out = {}
    for chars, label in sorted(labels.items(), key=lambda kv: kv[1]):
        P = np.eye(n)
        for ch, D in zip(chars, reps):
            P = P @ (np.eye(n) + ch * D) / 2.0
        # extract an orthonormal basis of the projection range
        u, s, _ = np.linalg.svd(P)
        cols = u[:, s > 1e-8]
        if cols.shape[1]:
            out[label] = cols
    total = sum(c.shape[1] for c in out.values())
    assert total == n, (total, n)
    return out


# ----------------------------------------------------------------------
# RHF in symmetry blocks
# ----------------------------------------------------------------------

def rhf(S, Hc, g, nocc, sym_blocks, damping=0.0, maxiter=400):
    n = S.shape[0]
    blocks = sorted(sym_blocks.items())

    def solve_blocks(F):
        energies, vectors, irreps = [], [], []
        for label, B in blocks:
            Fb = B.T @ F @ B
            Sb = B.T @ S @ B
            w, V = linalg.eigh(Fb, Sb)
            for k in range(len(w)):
                energies.append(w[k])
                vectors.append(B @ V[:, k])
                irreps.append(label)
        order = np.lexsort((irreps, np.round(np.asarray(energies), 10)))
        e = np.asarray(energies)[order]
        C = np.column_stack([vectors[k] for k in order])
        irr = [irreps[k] for k in order]
        return e, C, irr

    e, C, irr = solve_blocks(Hc)
    D = 2.0 * C[:, :nocc] @ C[:, :nocc].T
    E_old = 0.0
    for it in range(maxiter):
        J = np.einsum("pqrs,rs->pq", g, D)
        K = np.einsum("prqs,rs->pq", g, D)
        F = Hc + J - 0.5 * K
        E = 0.5 * np.sum(D * (Hc + F))
        e, C, irr = solve_blocks(F)
        Dn = 2.0 * C[:, :nocc] @ C[:, :nocc].T
        if damping > 0.0:
            Dn = (1.0 - damping) * Dn + damping * D
        dD = np.max(np.abs(Dn - D))
        D = Dn
        if abs(E - E_old) < 1e-13 and dD < 1e-11 and it > 3:
            break
        E_old = E
    else:
        raise RuntimeError("SCF not converged")
    # deterministic sign: largest-|coefficient| component positive
    for k in range(n):
        j = int(np.argmax(np.abs(C[:, k])))
        if C[j, k] < 0:
            C[:, k] = -C[:, k]
    return E, e, C, irr


def nuclear_repulsion(atoms):
    E = 0.0
    for i, (si, Ri) in enumerate(atoms):
        for j, (sj, Rj) in enumerate(atoms):
            if j >= i:
                continue
            E += CHARGE[si] * CHARGE[sj] / np.linalg.norm(np.asarray(Ri) - np.asarray(Rj))
    return E


def mo_transform(C, Hc, g):
    h = C.T @ Hc @ C
    gm = np.einsum("pqrs,pi->iqrs", g, C, optimize=True)
    gm = np.einsum("iqrs,qj->ijrs", gm, C, optimize=True)
    gm = np.einsum("ijrs,rk->ijks", gm, C, optimize=True)
    gm = np.einsum("ijks,sl->ijkl", gm, C, optimize=True)
    return h, gm


# ----------------------------------------------------------------------
# Minimal determinant FCI (fixture validation + CASCI)
# ----------------------------------------------------------------------

def enum_dets(n, na, nb, orbsym=None, irrep=None):
    import itertools
    dets = []
    for occa in itertools.combinations(range(n), na):
        for occb in itertools.combinations(range(n), nb):
            if irrep is not None:
                s = 0
                for p in occa:
                    s ^= orbsym[p] - 1
                for p in occb:
                    s ^= orbsym[p] - 1
                if s != irrep - 1:
                    continue
            dets.append((occa, occb))
    return dets


def _sc_phase(occ, p):
    return (-1) ** sum(1 for q in occ if q < p)


def _excite(occ, p, q):
    """<r| a_p^dag a_q |occ> style single replacement; returns (new, phase)."""
    if q not in occ or (p != q and p in occ):
        return None
    ph = _sc_phase(occ, q)
    tmp = tuple(x for x in occ if x != q)
    if p in tmp:
        return None
    ph *= _sc_phase(tmp, p)
    new = tuple(sorted(tmp + (p,)))
    return new, ph


def fci_matrix(h, g, dets):
    idx = {d: i for i, d in enumerate(dets)}
    n = len(dets)
    H = np.zeros((n, n))
    for j, (oa, ob) in enumerate(dets):
        # one-body
        for (occ, is_beta) in ((oa, False), (ob, True)):
            other = ob if not is_beta else oa
            for q in occ:
                for p in range(h.shape[0]):
                    r = _excite(occ, p, q)
                    if r is None:
                        continue
                    new, ph = r
                    d2 = (new, ob) if not is_beta else (oa, new)
                    i = idx.get(d2)
                    if i is not None:
                        H[i, j] += ph * h[p, q]
        # two-body, chemists (pq|rs) * a_p+ a_q ... spin-summed:
        # 1/2 sum_pqrs (pq|rs) sum_st a_ps+ a_rt+ a_st a_qs -> apply as two
        # successive singles with a correction; use E_pq E_rs - delta_qr E_ps
        for p in range(h.shape[0]):
            for q in range(h.shape[0]):
                # t1 = E_qs |det_j>, accumulate on the fly
                for (occ, is_beta) in ((oa, False), (ob, True)):
                    r = _excite(occ, p, q)
                    if r is None:
                        continue
                    new, ph = r
                    da, db = (new, ob) if not is_beta else (oa, new)
                    # now apply E_rs to (da, db)
                    for rr in range(h.shape[0]):
                        for ss in range(h.shape[0]):
                            coef = 0.5 * g[rr, ss, p, q]
                            if coef == 0.0:
                                continue
                            for (occ2, ib2) in ((da, False), (db, True)):
                                r2 = _excite(occ2, rr, ss)
                                if r2 is None:
                                    continue
                                new2, ph2 = r2
                                d3 = (new2, db) if not ib2 else (da, new2)
                                i = idx.get(d3)
                                if i is not None:
                                    H[i, j] += ph * ph2 * coef
                    # minus delta correction: -1/2 (r q|p s)->... handled below
        # correction term: -1/2 sum_{p s} [sum_q (p q| q s)] E_ps (same spin chain)
        hcorr = -0.5 * np.einsum("pqqs->ps", g)
        for (occ, is_beta) in ((oa, False), (ob, True)):
            for s_ in occ:
                for p in range(h.shape[0]):
                    r = _excite(occ, p, s_)
                    if r is None:
                        continue
                    new, ph = r
                    d2 = (new, ob) if not is_beta else (oa, new)
                    i = idx.get(d2)
                    if i is not None:
                        H[i, j] += ph * hcorr[p, s_]
    return H


def fci_lowest(h, g, ecore, dets, k=8):
    H = fci_matrix(h, g, dets)
    w, V = np.linalg.eigh((H + H.T) / 2)
    k = min(k, len(w))
    return w[:k] + ecore, V[:, :k]


# ----------------------------------------------------------------------
# CASSCF(2,2) for BeH2
# ----------------------------------------------------------------------

def casci_22(h, g, ecore, core, act, act_irreps=None):
    """CASCI with 2 electrons in 2 orbitals, lowest totally symmetric root
    when act_irreps is given (state-specific S0); returns (E, rdm1_act)."""
    heff = h[np.ix_(act, act)].copy()
    for t in range(2):
        for u in range(2):
            for c in core:
                heff[t, u] += 2 * g[act[t], act[u], c, c] - g[act[t], c, c, act[u]]
    e_core = ecore + 2 * sum(h[c, c] for c in core)
    for c in core:
        for d in core:
            e_core += 2 * g[c, c, d, d] - g[c, d, d, c]
    ga = g[np.ix_(act, act, act, act)]
    if act_irreps is not None:
        dets = enum_dets(2, 1, 1, orbsym=act_irreps, irrep=1)
    else:
        dets = enum_dets(2, 1, 1)
    H = fci_matrix(heff, ga, dets)
    w, V = np.linalg.eigh((H + H.T) / 2)
    v0 = V[:, 0]
    # spin-summed active 1-RDM
    rdm = np.zeros((2, 2))
    idx = {d: i for i, d in enumerate(dets)}
    for j, (oa, ob) in enumerate(dets):
        for p in range(2):
            for q in range(2):
                for (occ, is_beta) in ((oa, False), (ob, True)):
                    r = _excite(occ, p, q)
                    if r is None:
                        continue
                    new, ph = r
                    d2 = (new, ob) if not is_beta else (oa, new)
                    i = idx.get(d2)
                    if i is not None:
                        rdm[p, q] += ph * v0[i] * v0[j]
    return w[0] + e_core, rdm, (w + e_core, V, dets)


def casscf_22(S, Hc, g, ecore, C0, irr, act_idx, pairs):
    """Minimize the S0 CASCI(2,2) energy over orbital rotations exp(K)."""
    core = sorted(set(range(C0.shape[1])) - set(act_idx))[:2]  # two lowest non-active
    act_irreps = [irr[a] for a in act_idx]
    n = C0.shape[1]

    def energy(x):
        K = np.zeros((n, n))
        for k, (i, j) in enumerate(pairs):
            K[i, j] = x[k]
            K[j, i] = -x[k]
        C = C0 @ linalg.expm(K)
        h, gm = mo_transform(C, Hc, g)
        E, _, _ = casci_22(h, gm, ecore, core, act_idx, act_irreps)
        return E

    x0 = np.zeros(len(pairs))
    res = optimize.minimize(energy, x0, method="BFGS",
                            options={"gtol": 1e-9, "maxiter": 400})
    K = np.zeros((n, n))
    for k, (i, j) in enumerate(pairs):
        K[i, j] = res.x[k]
        K[j, i] = -res.x[k]
    C = C0 @ linalg.expm(K)
    return res.fun, C, core


# ----------------------------------------------------------------------
# File writers
# ----------------------------------------------------------------------

def write_fcidump(path, h, gmo, ecore, nelec, orbsym, ms2=0, thresh=1e-14):
    n = h.shape[0]
    lines = []
    lines.append(f"&FCI NORB={n},NELEC={nelec},MS2={ms2},")
    lines.append(" ORBSYM=" + ",".join(str(s) for s in orbsym) + ",")
    lines.append(" ISYM=1,")
    lines.append("&END")
    for p in range(n):
        for q in range(p + 1):
            for r in range(p + 1):
                smax = q if r == p else r
                for s in range(smax + 1):
                    v = gmo[p, q, r, s]
                    if abs(v) > thresh:
                        lines.append(f" {v: .16E} {p+1:3d} {q+1:3d} {r+1:3d} {s+1:3d}")
    for p in range(n):
        for q in range(p + 1):
            if abs(h[p, q]) > thresh:
                lines.append(f" {h[p, q]: .16E} {p+1:3d} {q+1:3d}   0   0")
    lines.append(f" {ecore: .16E}   0   0   0   0")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def write_dipole_file(path, mu, nuc, orbsym, thresh=1e-14):
    n = mu.shape[0]
    lines = []
    lines.append(f"&FCI NORB={n},")
    lines.append(" ORBSYM=" + ",".join(str(s) for s in orbsym) + ",")
    lines.append("&END")
    for p in range(n):
        for q in range(p + 1):
            if abs(mu[p, q]) > thresh:
                lines.append(f" {mu[p, q]: .16E} {p+1:3d} {q+1:3d}   0   0")
    lines.append(f" {nuc: .16E}   0   0   0   0")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


# ----------------------------------------------------------------------
# Per-system drivers
# ----------------------------------------------------------------------

def center_of_mass(atoms):
    m = np.array([MASS[s] for s, _ in atoms])
    R = np.array([r for _, r in atoms])
    return (m[:, None] * R).sum(axis=0) / m.sum()


def compute_all(atoms, gens, labels, nocc):
    aos = make_aos(atoms)
    S = overlap_matrix(aos)
    T = kinetic_matrix(aos)
    V = nuclear_matrix(aos, atoms)
    g = eri_tensor(aos)
    Hc = T + V
    enuc = nuclear_repulsion(atoms)
    com = center_of_mass(atoms)
    mus = [dipole_matrix(aos, com, ax) for ax in range(3)]
    blocks = salcs(aos, atoms, gens, labels)
    for damping in (0.0, 0.4, 0.7):
        try:
            E, e, C, irr = rhf(S, Hc, g, nocc, blocks, damping=damping)
            break
        except RuntimeError:
            continue
    else:
        raise RuntimeError("SCF failed at all damping levels")
    return dict(aos=aos, S=S, Hc=Hc, g=g, enuc=enuc, com=com, mus=mus,
                blocks=blocks, E_scf=E, eps=e, C=C, irr=irr, atoms=atoms)


def finalize(res, C, irr_list):
    """MO integrals + dipole MO matrices + nuclear dipole components."""
    h, gm = mo_transform(C, res["Hc"], res["g"])
    dip = [C.T @ M @ C for M in res["mus"]]
    nucd = []
    for ax in range(3):
        nd = sum(CHARGE[s] * (np.asarray(R)[ax] - res["com"][ax]) for s, R in res["atoms"])
        nucd.append(nd)
    return h, gm, dip, nucd


def orbital_positions(irr):
    """Map 'k-th orbital of irrep X' -> global index (energy order)."""
    pos = {}
    counts = {}
    for i, lab in enumerate(irr):
        counts[lab] = counts.get(lab, 0) + 1
        pos[(lab, counts[lab])] = i
    return pos


def occ_string(n, alpha_occ, beta_occ):
    s = []
    for i in range(n):
        a = i in alpha_occ
        b = i in beta_occ
        s.append("2" if a and b else "a" if a else "b" if b else "0")
    return "".join(s)


INV_SQRT2 = 1.0 / math.sqrt(2.0)


def main():
    os.makedirs(FIXDIR, exist_ok=True)
    os.makedirs(CFGDIR, exist_ok=True)
    for sub in ("h2", "h4_rect", "h4_linear", "beh2"):
        os.makedirs(os.path.join(FIXDIR, sub), exist_ok=True)

    validate_engine()
    refdata = {}

    gen_h2(refdata)
    gen_h4_rect(refdata)
    gen_h4_linear(refdata)
    gen_beh2(refdata)

    with open(os.path.join(FIXDIR, "reference_data.json"), "w") as f:
        json.dump(refdata, f, indent=1, sort_keys=True)
    print("fixture generation complete")


def validate_engine():
    """Check the integral engine against Szabo-Ostlund H2/STO-3G numbers."""
    r = 1.4  # bohr
    atoms = [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]
    a3 = np.array([3.42525091, 0.62391373, 0.16885540])
    c3 = np.array([0.15432897, 0.53532814, 0.44463454])
    aos = [AO((0, 0, 0), (0, 0, 0), a3, c3, 0), AO((0, 0, r), (0, 0, 0), a3, c3, 1)]
    S = overlap_matrix(aos)
    assert abs(S[0, 1] - 0.6593) < 2e-4, S
    T = kinetic_matrix(aos)
    assert abs(T[0, 0] - 0.7600) < 2e-4, T
    g = eri_tensor(aos)
    assert abs(g[0, 0, 0, 0] - 0.7746) < 2e-4, g[0, 0, 0, 0]
    assert abs(g[0, 1, 0, 1] - 0.2970) < 2e-4, g[0, 1, 0, 1]
    V = nuclear_matrix(aos, atoms)
    Hc = T + V
    blocks = {1: np.eye(2)}
    E, e, C, irr = rhf(S, Hc, g, 1, blocks)
    Etot = E + nuclear_repulsion(atoms)
    assert abs(Etot - (-1.1167)) < 2e-3, Etot
    print(f"engine validation ok: H2/STO-3G E = {Etot:.6f}")


def gen_h2(refdata):
    r = 1.00 * ANGSTROM
    atoms = [("H", (0.0, 0.0, -r / 2)), ("H", (0.0, 0.0, r / 2))]
    res = compute_all(atoms, D2H_GENS, D2H_LABELS, nocc=1)
    h, gm, dip, nucd = finalize(res, res["C"], res["irr"])
    path = os.path.join(FIXDIR, "h2", "h2_r1.00.fcidump")
    write_fcidump(path, h, gm, res["enuc"], 2, res["irr"])
    for ax, tag in enumerate("xyz"):
        write_dipole_file(path.replace(".fcidump", f".dip{tag}"), dip[ax], nucd[ax], res["irr"])
    dets = enum_dets(2, 1, 1)
    w, _ = fci_lowest(h, gm, res["enuc"], dets, k=4)
    refdata["h2_r1.00"] = {"e_scf": res["E_scf"] + res["enuc"], "fci": list(w)}
    print(f"h2: E_scf={res['E_scf']+res['enuc']:.10f} FCI0={w[0]:.10f}")


def gen_h4_rect(refdata):
    grid = [0.75, 0.80, 0.85, 0.90, 0.95, 1.00, 1.05, 1.10, 1.20, 1.30, 1.44, 1.60, 1.80, 2.00]
    d = 1.00 * ANGSTROM
    geoms = []
    for r in grid:
        rx = r * ANGSTROM
        atoms = [("H", (-rx / 2, -d / 2, 0.0)), ("H", (-rx / 2, d / 2, 0.0)),
                 ("H", (rx / 2, -d / 2, 0.0)), ("H", (rx / 2, d / 2, 0.0))]
        res = compute_all(atoms, D2H_GENS, D2H_LABELS, nocc=2)
        h, gm, dip, nucd = finalize(res, res["C"], res["irr"])
        gid = f"r{r:.2f}"
        base = os.path.join(FIXDIR, "h4_rect", f"h4_rect_{gid}")
        write_fcidump(base + ".fcidump", h, gm, res["enuc"], 4, res["irr"])
        for ax, tag in enumerate("xyz"):
            write_dipole_file(base + f".dip{tag}", dip[ax], nucd[ax], res["irr"])

        pos = orbital_positions(res["irr"])
        iag = pos[(1, 1)]
        # the two ungerade valence orbitals (B3u=2, B2u=3 in Molpro D2h)
        iu1 = pos[(2, 1)] if (2, 1) in pos else None
        iu2 = pos[(3, 1)] if (3, 1) in pos else None
        assert iu1 is not None and iu2 is not None
        ib1g = pos[(4, 1)]
        n = 4
        # Table-style CSF references; u_a = B3u orbital, u_b = B2u orbital
        csf1 = {"label": "S(Ag):u1^2",
                "terms": [[occ_string(n, {iag, iu1}, {iag, iu1}), 1.0]]}
        csf2 = {"label": "S(Ag):u2^2",
                "terms": [[occ_string(n, {iag, iu2}, {iag, iu2}), 1.0]]}
        csf3 = {"label": "S(B1g)",
                "terms": [[occ_string(n, {iag, iu1}, {iag, iu2}), INV_SQRT2],
                          [occ_string(n, {iag, iu2}, {iag, iu1}), -INV_SQRT2]]}
        csf4 = {"label": "T(B1g)",
                "terms": [[occ_string(n, {iag, iu1}, {iag, iu2}), INV_SQRT2],
                          [occ_string(n, {iag, iu2}, {iag, iu1}), INV_SQRT2]]}
        # triplets with doubly occupied u orbital: T(B2u): ag,u1 open, u2 closed?
        # paper CSF5: |ag^a u1^b u2^2| + |ag^b u1^a u2^2| (symmetry ag x u1)
        csf5 = {"label": "T(ag*u1)",
                "terms": [[occ_string(n, {iag, iu2}, {iu1, iu2}), INV_SQRT2],
                          [occ_string(n, {iu1, iu2}, {iag, iu2}), INV_SQRT2]]}
        csf6 = {"label": "T(ag*u2)",
                "terms": [[occ_string(n, {iag, iu1}, {iu2, iu1}), INV_SQRT2],
                          [occ_string(n, {iu2, iu1}, {iag, iu1}), INV_SQRT2]]}
        refs = [csf1, csf2, csf3, csf4, csf5, csf6]
        # diagonal energies of the two closed-shell dets decide the ADAPT ref
        e1 = det_energy(h, gm, res["enuc"], ({iag, iu1}, {iag, iu1}))
        e2 = det_energy(h, gm, res["enuc"], ({iag, iu2}, {iag, iu2}))
        hf_first = e1 <= e2
        geoms.append(dict(id=gid, coord=r, fcidump=relp(base + ".fcidump"),
                          dipole={t: relp(base + f".dip{t}") for t in "xyz"},
                          references=refs if hf_first else [csf2, csf1, csf3, csf4, csf5, csf6],
                          orbsym=list(res["irr"])))
        if r in (1.00, 0.75, 2.00):
            dets = enum_dets(4, 2, 2)
            w, _ = fci_lowest(h, gm, res["enuc"], dets, k=8)
            refdata[f"h4_rect_{gid}"] = {"e_scf": res["E_scf"] + res["enuc"], "fci": list(w)}
        print(f"h4_rect {gid}: E_scf={res['E_scf']+res['enuc']:.8f}")

    emit_configs_h4_rect(geoms)


def det_energy(h, g, ecore, det):
    oa, ob = det
    E = ecore
    for p in list(oa) + list(ob):
        E += h[p, p]
    occ = list(oa) + list(ob)
    for i, p in enumerate(occ):
        for q in occ[:i]:
            E += g[p, p, q, q]
    for i, p in enumerate(oa):
        for q in list(oa)[:i]:
            E -= g[p, q, q, p]
    for i, p in enumerate(ob):
        for q in list(ob)[:i]:
            E -= g[p, q, q, p]
    return E


def relp(p):
    return os.path.relpath(p, ROOT)


def emit_configs_h4_rect(geoms):
    sector = {"n_alpha": 2, "n_beta": 2, "irreps": "all"}
    common = dict(system="h4_rect", point_group="d2h", sector=sector,
                  coord_label="r (angstrom)")
    cfg = dict(method="fci", n_states=8, output_dir="out/h4_rect_fci",
               geometries=[{k: g[k] for k in ("id", "coord", "fcidump", "dipole")} for g in geoms],
               **common)
    dump_cfg("h4_rect_fci.json", cfg)

    cfg = dict(method="adapt", output_dir="out/h4_rect_adapt",
               references="hf", stop={"max_ops": 25, "grad_norm": 1e-9},
               optimizer={"gtol": 1e-10},
               geometries=[{k: g[k] for k in ("id", "coord", "fcidump", "dipole")} for g in geoms],
               **common)
    dump_cfg("h4_rect_adapt.json", cfg)

    cfg = dict(method="more_adapt", output_dir="out/h4_rect_more",
               weights="equal", stop={"max_ops": 50, "grad_norm": 1e-9},
               optimizer={"gtol": 1e-10},
               geometries=[{k: g[k] for k in ("id", "coord", "fcidump", "dipole", "references")} for g in geoms],
               **common)
    dump_cfg("h4_rect_more.json", cfg)

    cfg = dict(method="qsceom", output_dir="out/h4_rect_qsceom",
               stop={"max_ops": 40, "grad_norm": 1e-9}, optimizer={"gtol": 1e-10},
               geometries=[{k: g[k] for k in ("id", "coord", "fcidump", "dipole", "references")} for g in geoms],
               **common)
    dump_cfg("h4_rect_qsceom.json", cfg)


def dump_cfg(name, cfg):
    with open(os.path.join(CFGDIR, name), "w") as f:
        json.dump(cfg, f, indent=1)


def gen_h4_linear(refdata):
    grid = [0.60, 0.70, 0.75, 0.80, 0.88, 0.92, 1.00, 1.07, 1.15, 1.30, 1.50, 1.75]
    geoms = []
    for r in grid:
        rb = r * ANGSTROM
        atoms = [("H", (0.0, 0.0, (k - 1.5) * rb)) for k in range(4)]
        res = compute_all(atoms, D2H_GENS, D2H_LABELS, nocc=2)
        h, gm, dip, nucd = finalize(res, res["C"], res["irr"])
        gid = f"r{r:.2f}"
        base = os.path.join(FIXDIR, "h4_linear", f"h4_linear_{gid}")
        write_fcidump(base + ".fcidump", h, gm, res["enuc"], 4, res["irr"])
        for ax, tag in enumerate("xyz"):
            write_dipole_file(base + f".dip{tag}", dip[ax], nucd[ax], res["irr"])
        pos = orbital_positions(res["irr"])
        g1 = pos[(1, 1)]; u1 = pos[(5, 1)]; g2 = pos[(1, 2)]; u2 = pos[(5, 2)]
        n = 4

        def det(aocc, bocc, label):
            return {"label": label, "terms": [[occ_string(n, set(aocc), set(bocc)), 1.0]]}

        refs = [
            det({g1, u1}, {g1, u1}, "1g2 1u2"),
            det({g1, g2}, {g1, g2}, "1g2 2g2"),
            det({u1, g2}, {u1, g2}, "1u2 2g2"),
            det({g1, u1}, {g1, u2}, "1g2 1u^a 2u^b"),
            det({g1, u2}, {g1, u1}, "1g2 1u^b 2u^a"),
            det({g1, u1}, {u1, g2}, "1g^a 1u2 2g^b"),
            det({u1, g2}, {g1, u1}, "1g^b 1u2 2g^a"),
            det({g1, u1}, {g2, u2}, "open4 a"),
            det({g2, u2}, {g1, u1}, "open4 b"),
        ]
        geoms.append(dict(id=gid, coord=r, fcidump=relp(base + ".fcidump"),
                          dipole={t: relp(base + f".dip{t}") for t in "xyz"},
                          references=refs, orbsym=list(res["irr"])))
        if r == 0.88:
            dets = enum_dets(4, 2, 2, orbsym=res["irr"], irrep=1)
            assert len(dets) == 20, len(dets)
            w, _ = fci_lowest(h, gm, res["enuc"], dets, k=12)
            refdata[f"h4_linear_{gid}"] = {"e_scf": res["E_scf"] + res["enuc"], "fci_Ag": list(w)}
        print(f"h4_linear {gid}: E_scf={res['E_scf']+res['enuc']:.8f}")

    sector = {"n_alpha": 2, "n_beta": 2, "irreps": [1]}
    common = dict(system="h4_linear", point_group="d2h", sector=sector,
                  coord_label="r (angstrom)")
    g_common = [{k: g[k] for k in ("id", "coord", "fcidump", "dipole")} for g in geoms]
    g_refs = [{k: g[k] for k in ("id", "coord", "fcidump", "dipole", "references")} for g in geoms]
    dump_cfg("h4_linear_fci.json", dict(method="fci", n_states=9,
                                        output_dir="out/h4_linear_fci", geometries=g_common, **common))
    dump_cfg("h4_linear_more.json", dict(method="more_adapt", output_dir="out/h4_linear_more",
                                         weights="equal", stop={"max_ops": 100, "grad_norm": 1e-9},
                                         optimizer={"gtol": 1e-10}, geometries=g_refs, **common))
    dump_cfg("h4_linear_qsceom.json", dict(method="qsceom", output_dir="out/h4_linear_qsceom",
                                           stop={"max_ops": 60, "grad_norm": 1e-9},
                                           optimizer={"gtol": 1e-10}, geometries=g_refs, **common))


def gen_beh2(refdata):
    grid = [0.75, 0.90, 1.00, 1.10, 1.20, 1.23, 1.30, 1.40, 1.55, 1.70, 1.90, 2.10, 2.30]
    geoms = []
    for y in grid:
        z = (127.0 - 50.0 * y) / 23.0
        atoms = [("Be", (0.0, 0.0, 0.0)), ("H", (0.0, y, z)), ("H", (0.0, -y, z))]
        res = compute_all(atoms, C2V_GENS, C2V_LABELS, nocc=3)
        pos = orbital_positions(res["irr"])
        act = sorted([pos[(1, 3)], pos[(3, 1)]])  # 3a1 and 1b2
        nmo = res["C"].shape[1]
        pairs = []
        for i in range(nmo):
            for j in range(i + 1, nmo):
                if res["irr"][i] != res["irr"][j]:
                    continue
                ia, ja = i in act, j in act
                core_set = sorted(set(range(nmo)) - set(act))[:2]
                iv = (i not in act) and (i not in core_set)
                jv = (j not in act) and (j not in core_set)
                ic = i in core_set
                jc = j in core_set
                if (ic and jc) or (iv and jv) or (ia and ja):
                    continue
                pairs.append((i, j))
        E_cas, C_cas, core = casscf_22(res["S"], res["Hc"], res["g"], res["enuc"],
                                       res["C"], res["irr"], act, pairs)
        assert E_cas < res["E_scf"] + res["enuc"] + 1e-10
        # canonicalize core/virtual blocks with the generalized Fock
        act_irreps = [res["irr"][a] for a in act]
        h, gm = mo_transform(C_cas, res["Hc"], res["g"])
        _, rdm_act, _ = casci_22(h, gm, res["enuc"], core, act, act_irreps)
        gamma = np.zeros((nmo, nmo))
        for c in core:
            gamma[c, c] = 2.0
        for a_ in range(2):
            for b_ in range(2):
                gamma[act[a_], act[b_]] = rdm_act[a_, b_]
        F = h + np.einsum("pq,mnpq->mn", gamma, gm) - 0.5 * np.einsum("pq,mqpn->mn", gamma, gm)
        C2 = C_cas.copy()
        irr2 = list(res["irr"])
        # block-diagonalize F within (core, virtual) x irrep subspaces
        virt = sorted(set(range(nmo)) - set(core) - set(act))
        for blockidx in (core, virt):
            by_irr = {}
            for i in blockidx:
                by_irr.setdefault(res["irr"][i], []).append(i)
            for lab, ids in by_irr.items():
                if len(ids) < 2:
                    continue
                Fb = F[np.ix_(ids, ids)]
                w, U = np.linalg.eigh((Fb + Fb.T) / 2)
                C2[:, ids] = C2[:, ids] @ U
        h, gm = mo_transform(C2, res["Hc"], res["g"])
        _, rdm_act, _ = casci_22(h, gm, res["enuc"], core, act, act_irreps)
        gamma = np.zeros((nmo, nmo))
        for c in core:
            gamma[c, c] = 2.0
        for a_ in range(2):
            for b_ in range(2):
                gamma[act[a_], act[b_]] = rdm_act[a_, b_]
        F = h + np.einsum("pq,mnpq->mn", gamma, gm) - 0.5 * np.einsum("pq,mqpn->mn", gamma, gm)
        order = np.lexsort((irr2, np.round(np.diag(F), 9)))
        C2 = C2[:, order]
        irr2 = [irr2[k] for k in order]
        for k in range(nmo):
            j = int(np.argmax(np.abs(C2[:, k])))
            if C2[j, k] < 0:
                C2[:, k] = -C2[:, k]
        h, gm, dip, nucd = finalize(dict(res, C=C2), C2, irr2)

        gid = f"y{y:.2f}"
        base = os.path.join(FIXDIR, "beh2", f"beh2_{gid}")
        write_fcidump(base + ".fcidump", h, gm, res["enuc"], 6, irr2)
        for ax, tag in enumerate("xyz"):
            write_dipole_file(base + f".dip{tag}", dip[ax], nucd[ax], irr2)

        pos = orbital_positions(irr2)
        a1_1, a1_2, a1_3 = pos[(1, 1)], pos[(1, 2)], pos[(1, 3)]
        b2_1 = pos[(3, 1)]
        n = 7
        csf1 = {"label": "S0(A1)",
                "terms": [[occ_string(n, {a1_1, a1_2, b2_1}, {a1_1, a1_2, b2_1}), 1.0]]}
        csf2 = {"label": "S1(A1)",
                "terms": [[occ_string(n, {a1_1, a1_2, a1_3}, {a1_1, a1_2, a1_3}), 1.0]]}
        csf3 = {"label": "T(A1)",
                "terms": [[occ_string(n, {a1_1, a1_2, b2_1}, {a1_1, a1_3, b2_1}), INV_SQRT2],
                          [occ_string(n, {a1_1, a1_3, b2_1}, {a1_1, a1_2, b2_1}), INV_SQRT2]]}
        csf4 = {"label": "T(B2)",
                "terms": [[occ_string(n, {a1_1, a1_2, a1_3}, {a1_1, a1_2, b2_1}), INV_SQRT2],
                          [occ_string(n, {a1_1, a1_2, b2_1}, {a1_1, a1_2, a1_3}), INV_SQRT2]]}
        refs = [csf1, csf2, csf3, csf4]
        geoms.append(dict(id=gid, coord=y, fcidump=relp(base + ".fcidump"),
                          dipole={t: relp(base + f".dip{t}") for t in "xyz"},
                          references=refs, orbsym=list(irr2)))
        if abs(y - 1.23) < 1e-9:
            dets = enum_dets(7, 3, 3, orbsym=irr2, irrep=1)
            assert len(dets) == 321, len(dets)
            detsb = enum_dets(7, 3, 3, orbsym=irr2, irrep=3)
            assert len(detsb) == 304, len(detsb)
            w, _ = fci_lowest(h, gm, res["enuc"], dets, k=6)
            wb, _ = fci_lowest(h, gm, res["enuc"], detsb, k=4)
            refdata[f"beh2_{gid}"] = {"e_cas": E_cas, "fci_A1": list(w), "fci_B2": list(wb)}
        print(f"beh2 {gid}: E_cas={E_cas:.8f}")

    sector = {"n_alpha": 3, "n_beta": 3, "irreps": [1, 3]}
    common = dict(system="beh2", point_group="c2v", sector=sector,
                  coord_label="y (bohr)")
    g_common = [{k: g[k] for k in ("id", "coord", "fcidump", "dipole")} for g in geoms]
    g_refs = [{k: g[k] for k in ("id", "coord", "fcidump", "dipole", "references")} for g in geoms]
    dump_cfg("beh2_fci.json", dict(method="fci", n_states=6,
                                   output_dir="out/beh2_fci", geometries=g_common, **common))
    dump_cfg("beh2_more.json", dict(method="more_adapt", output_dir="out/beh2_more",
                                    weights="equal", stop={"max_ops": 300, "grad_norm": 1e-7},
                                    optimizer={"gtol": 3e-9}, geometries=g_refs, **common))
    dump_cfg("beh2_qsceom.json", dict(method="qsceom", output_dir="out/beh2_qsceom",
                                      stop={"max_ops": 250, "grad_norm": 3e-6},
                                      optimizer={"gtol": 1e-9}, geometries=g_refs, **common))


if __name__ == "__main__":
    main()
