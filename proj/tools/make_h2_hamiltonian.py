#!/usr/bin/env python3
"""Generate 4-qubit H2 (STO-3G) qubit Hamiltonians in the Pauli-term format.

Requires pyscf for the molecular integrals. The fermion-to-qubit mapping is a
plain Jordan-Wigner transform over interleaved spin orbitals
(0a, 0b, 1a, 1b); qubit 0 is the leftmost character of each Pauli word.

    python3 tools/make_h2_hamiltonian.py --bond 0.5 --out data/hamiltonians/h2_0.50.txt
"""
import argparse
import itertools

import numpy as np
from pyscf import ao2mo, gto, scf

I2 = np.eye(2, dtype=complex)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_all(mats):
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def annihilator(mode, n):
    # Jordan-Wigner: a_j = Z^{<j} (X + iY)/2 on qubit j, qubit 0 most significant.
    lower = np.array([[0, 1], [0, 0]], dtype=complex)
    return kron_all([PAULI["Z"]] * mode + [lower] + [I2] * (n - mode - 1))


def spin_orbital_integrals(h1, eri):
    nso = 2 * h1.shape[0]
    h = np.zeros((nso, nso))
    g = np.zeros((nso, nso, nso, nso))
    for p, q in itertools.product(range(nso), repeat=2):
        if p % 2 == q % 2:
            h[p, q] = h1[p // 2, q // 2]
    # chemists' notation (pq|rs)
    for p, q, r, s in itertools.product(range(nso), repeat=4):
        if p % 2 == q % 2 and r % 2 == s % 2:
            g[p, q, r, s] = eri[p // 2, q // 2, r // 2, s // 2]
    return h, g


def qubit_hamiltonian(bond):
    mol = gto.M(atom=f"H 0 0 0; H 0 0 {bond}", basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol).run()
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), c.shape[1])
    h, g = spin_orbital_integrals(h1, eri)
    n = h.shape[0]
    a = [annihilator(j, n) for j in range(n)]
    ad = [m.conj().T for m in a]
    dim = 2**n
    H = mol.energy_nuc() * np.eye(dim, dtype=complex)
    for p, q in itertools.product(range(n), repeat=2):
        if h[p, q] != 0.0:
            H += h[p, q] * ad[p] @ a[q]
    for p, q, r, s in itertools.product(range(n), repeat=4):
        if g[p, q, r, s] != 0.0:
            H += 0.5 * g[p, q, r, s] * ad[p] @ ad[r] @ a[s] @ a[q]
    terms = []
    for word in itertools.product("IXYZ", repeat=n):
        coeff = np.trace(kron_all([PAULI[ch] for ch in word]) @ H) / dim
        if abs(coeff) > 1e-10:
            assert abs(coeff.imag) < 1e-10
            terms.append((coeff.real, "".join(word)))
    e0 = np.linalg.eigvalsh(H)[0]
    return terms, e0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--bond", type=float, required=True, help="bond length in Angstrom")
    parser.add_argument("--out", required=True)
    args = parser.parse_args()
    terms, e0 = qubit_hamiltonian(args.bond)
    with open(args.out, "w") as fh:
        fh.write(f"# H2 STO-3G, bond length {args.bond} A, Jordan-Wigner, 4 qubits\n")
        fh.write(f"# exact ground energy {e0:.12f} Ha\n")
        for coeff, word in terms:
            fh.write(f"{coeff:.15g} {word}\n")
    print(f"{args.out}: {len(terms)} terms, E0 = {e0:.10f}")


if __name__ == "__main__":
    main()
