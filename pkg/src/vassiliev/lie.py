"""Lie-algebra weight systems on chord diagrams.

A weight system assigns to each degree-m chord diagram the trace of a
product of generators: every chord carries a summed generator index and
deposits one generator at each of its two endpoints; the product is
taken around the circle.

Generators are normalized so that tr(T_a T_b) = delta_ab / 2.  For
gl(N) the hermitian u(N) basis is used (generalized Gell-Mann matrices
plus the scaled identity), which keeps the structure constants real and
totally antisymmetric.
"""

from __future__ import annotations

import numpy as np


class LieAlgebraData:
    """Generators plus derived structure constants.

    Parameters
    ----------
    name : str
    generators : array (dim, N, N), hermitian, tr(T_a T_b) = delta/2
    """

    def __init__(self, name, generators):
        self.name = name
        self.generators = np.asarray(generators, dtype=complex)
        if self.generators.ndim != 3 or self.generators.shape[1] != self.generators.shape[2]:
            raise ValueError("generators must be a (dim, N, N) array")
        self.dim = self.generators.shape[0]
        self.matrix_size = self.generators.shape[1]
        self.structure_constants = self._structure_constants()

    def _structure_constants(self):
        T = self.generators
        # f_abc = -2i tr([T_a, T_b] T_c) given tr(T_a T_b) = delta/2
        comm = np.einsum("aij,bjk->abik", T, T) - np.einsum("bij,ajk->abik", T, T)
        f = -2j * np.einsum("abij,cji->abc", comm, T)
        if np.max(np.abs(f.imag)) > 1e-10:
            raise ValueError(f"{self.name}: structure constants are not real in this basis")
        return f.real

    def check(self, tol=1e-12):
        """Verify hermiticity, trace normalization, commutator closure
        and total antisymmetry of the structure constants."""
        T = self.generators
        herm = np.max(np.abs(T - np.conj(np.transpose(T, (0, 2, 1)))))
        if herm > tol:
            raise ValueError(f"{self.name}: generators not hermitian (residual {herm:.3e})")
        gram = np.einsum("aij,bji->ab", T, T)
        target = 0.5 * np.eye(self.dim)
        norm_res = np.max(np.abs(gram - target))
        if norm_res > tol:
            raise ValueError(f"{self.name}: tr(T_a T_b) != delta/2 (residual {norm_res:.3e})")
        ok, residual = commutator_4T_witness(self, tol=tol)
        if not ok:
            raise ValueError(f"{self.name}: commutator closure fails (residual {residual:.3e})")
        f = self.structure_constants
        anti = max(
            np.max(np.abs(f + np.transpose(f, (1, 0, 2)))),
            np.max(np.abs(f + np.transpose(f, (0, 2, 1)))),
        )
        if anti > tol:
            raise ValueError(f"{self.name}: structure constants not totally antisymmetric")
        return True


def commutator_4T_witness(algebra, tol=1e-12):
    """Largest residual of [T_a, T_b] = i f_abc T_c over all pairs.

    This identity is what makes the weight system satisfy the four-term
    relations, so it is exposed as its own witness.  Returns
    (ok, max_residual).
    """
    T = algebra.generators
    f = algebra.structure_constants
    comm = np.einsum("aij,bjk->abik", T, T) - np.einsum("bij,ajk->abik", T, T)
    target = 1j * np.einsum("abc,cij->abij", f, T)
    residual = float(np.max(np.abs(comm - target)))
    return residual <= tol, residual


def su2_fundamental():
    """Pauli matrices over two: tr(T_a T_b) = delta/2, f = epsilon."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return LieAlgebraData("su2", np.stack([sx, sy, sz]) / 2)


def gl_fundamental(N):
    """Hermitian u(N) basis: off-diagonal symmetric and antisymmetric
    pairs, traceless diagonals, and the scaled identity.  dim = N^2."""
    if N < 1:
        raise ValueError("N must be positive")
    mats = []
    for j in range(N):
        for k in range(j + 1, N):
            sym = np.zeros((N, N), dtype=complex)
            sym[j, k] = sym[k, j] = 0.5
            mats.append(sym)
            asym = np.zeros((N, N), dtype=complex)
            asym[j, k] = -0.5j
            asym[k, j] = 0.5j
            mats.append(asym)
    for l in range(1, N):
        diag = np.zeros((N, N), dtype=complex)
        for i in range(l):
            diag[i, i] = 1
        diag[l, l] = -l
        mats.append(diag / np.sqrt(2 * l * (l + 1)))
    mats.append(np.eye(N, dtype=complex) / np.sqrt(2 * N))
    return LieAlgebraData(f"gl{N}", np.stack(mats))


def weight(algebra, diagram, degree_bound=4):
    """Weight of a chord diagram: sum over per-chord generator indices
    of the trace of the generator product around the circle.

    Contracted with open-chord tensor states, so the cost is
    dim^(max simultaneously open chords), not dim^m.  Degrees above
    degree_bound raise (the bound guards memory, not correctness).
    """
    if diagram.degree > degree_bound:
        raise ValueError(
            f"degree {diagram.degree} exceeds the configured bound {degree_bound}"
        )
    return _weight_of_pairing(algebra, diagram.partner)


def _weight_of_pairing(algebra, partner):
    T = algebra.generators
    N = algebra.matrix_size
    state = np.eye(N, dtype=complex)
    open_axes = []
    for p in range(len(partner)):
        q = partner[p]
        if q > p:
            state = np.einsum("...ij,ajk->a...ik", state, T)
            open_axes.insert(0, p)
        else:
            ax = open_axes.index(q)
            open_axes.pop(ax)
            state = np.moveaxis(state, ax, 0)
            state = np.einsum("a...ij,ajk->...ik", state, T)
    return complex(np.trace(state))


def weight_system(algebra, m, degree_bound=4):
    """Table of weights for every canonical degree-m diagram."""
    from .chords import enumerate_diagrams

    diagrams, _ = enumerate_diagrams(m)
    return {d: weight(algebra, d, degree_bound=degree_bound) for d in diagrams}
