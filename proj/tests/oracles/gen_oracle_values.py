#!/usr/bin/env python3
"""Dense-matrix reference values for the C++ tests.

Independent of the library: circuits are built as full 2^q x 2^q operators
with numpy kron products, derivatives come from central finite differences,
and spectra from numpy.linalg. The output header is checked in; rerun only
when a reference definition changes.

    python3 tests/oracles/gen_oracle_values.py > tests/oracle_values.hpp
"""
import math
import pathlib

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parents[2]
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
PAULI = {"I": I2, "X": X, "Y": Y, "Z": Z}


def rx(t):
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def ry(t):
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(t):
    return np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])


def rot(phi, theta, omega):
    return rz(omega) @ ry(theta) @ rz(phi)


def on_qubit(m, target, q):
    ops = [I2] * q
    ops[target] = m
    out = np.array([[1]], dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def controlled(kind, control, target, q):
    dim = 2 ** q
    out = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        cbit = (i >> (q - 1 - control)) & 1
        tbit = (i >> (q - 1 - target)) & 1
        if kind == "CNOT":
            j = i ^ (cbit << (q - 1 - target))
            out[j, i] = 1
        else:
            out[i, i] = -1 if (cbit and tbit) else 1
    return out


def theta_formula(p):
    return [math.fmod(0.1 + 0.37 * i, 2 * math.pi) for i in range(p)]


def sel_state(layers, q, theta, features=()):
    psi = np.zeros(2 ** q, dtype=complex)
    psi[0] = 1
    for j, f in enumerate(features):
        psi = on_qubit(ry(f), j, q) @ psi
    for layer in range(layers):
        for k in range(q):
            base = (layer * q + k) * 3
            psi = on_qubit(rot(*theta[base:base + 3]), k, q) @ psi
        r = 1 + layer % (q - 1)
        for k in range(1 if q == 2 else q):
            psi = controlled("CNOT", k, (k + r) % q, q) @ psi
    return psi


def hea_state(layers, q, theta):
    psi = np.zeros(2 ** q, dtype=complex)
    psi[0] = 1
    for layer in range(layers):
        for k in range(q):
            base = (layer * q + k) * 2
            psi = on_qubit(ry(theta[base]), k, q) @ psi
            psi = on_qubit(rz(theta[base + 1]), k, q) @ psi
        for k in range(q - 1):
            psi = controlled("CNOT", k, k + 1, q) @ psi
    return psi


def pauli_matrix(word):
    out = np.array([[1]], dtype=complex)
    for ch in word:
        out = np.kron(out, PAULI[ch])
    return out


def load_hamiltonian(path):
    terms = []
    for line in path.read_text().splitlines():
        line = line.split("#")[0].strip()
        if line:
            c, w = line.split()
            terms.append((float(c), w))
    return sum(c * pauli_matrix(w) for c, w in terms)


def fd_gradient(f, theta, h=1e-6):
    g = []
    for i in range(len(theta)):
        tp, tm = list(theta), list(theta)
        tp[i] += h
        tm[i] -= h
        g.append((f(tp) - f(tm)) / (2 * h))
    return g


def fd_qfim(state_fn, theta, h=1e-5):
    psi = state_fn(theta)
    d = []
    for i in range(len(theta)):
        tp, tm = list(theta), list(theta)
        tp[i] += h
        tm[i] -= h
        d.append((state_fn(tp) - state_fn(tm)) / (2 * h))
    p = len(theta)
    f = np.zeros((p, p))
    for a in range(p):
        for b in range(p):
            val = np.vdot(d[a], d[b]) - np.vdot(d[a], psi) * np.vdot(psi, d[b])
            f[a, b] = 4 * val.real
    return 0.5 * (f + f.T)


def load_csv(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    return data[:, :-1], data[:, -1].astype(int)


def emit_array(name, values, fmt="{:.17g}"):
    body = ", ".join(fmt.format(v) for v in values)
    return f"inline constexpr double {name}[] = {{{body}}};"


def main():
    lines = [
        "// Copyright 2026 The hypinit Authors.",
        "// SPDX-License-Identifier: Apache-2.0",
        "",
        "// Generated by tests/oracles/gen_oracle_values.py. Do not edit.",
        "#pragma once",
        "",
        "namespace oracle {",
        "",
    ]

    # Strongly entangling, 2 layers x 3 qubits.
    theta = theta_formula(18)
    psi = sel_state(2, 3, theta)
    lines.append(emit_array("kSel23Real", psi.real))
    lines.append(emit_array("kSel23Imag", psi.imag))

    # HEA 2 layers x 3 qubits: <Z0 Z1> and its finite-difference gradient.
    zz = pauli_matrix("ZZI")
    theta = theta_formula(12)

    def hea_cost(t):
        s = hea_state(2, 3, t)
        return np.vdot(s, zz @ s).real

    lines.append(emit_array("kHea23Cost", [hea_cost(theta)]))
    lines.append(emit_array("kHea23Gradient", fd_gradient(hea_cost, theta)))

    # QFIM of HEA 2 layers x 2 qubits from finite-difference states.
    theta = theta_formula(8)
    f = fd_qfim(lambda t: hea_state(2, 2, t), theta)
    lines.append(emit_array("kHea22Qfim", f.flatten()))

    # Ground energies by dense diagonalization.
    hdir = ROOT / "data" / "hamiltonians"
    for name, fname in [("kToy2qGround", "toy_2q.txt"),
                        ("kH2Bond0p7414Ground", "h2_0.7414.txt"),
                        ("kH2Bond0p5Ground", "h2_0.5.txt"),
                        ("kH2Bond1p1Ground", "h2_1.1.txt")]:
        h = load_hamiltonian(hdir / fname)
        lines.append(emit_array(name, [np.linalg.eigvalsh(h)[0]]))

    # Binary QML readout: 1-layer SEL on 2 qubits, features (0.3, 1.2).
    theta = theta_formula(6)
    psi = sel_state(1, 2, theta, features=(0.3, 1.2))
    p1 = float(np.sum(np.abs(psi[2:]) ** 2))
    lines.append(emit_array("kQmlBinaryP1", [p1]))
    lines.append(emit_array("kQmlBinaryLossLabel1", [-math.log(p1)]))

    # Three-class readout on 2 qubits: first two qubits marginals truncated.
    probs = np.abs(psi) ** 2
    marg = probs[:3] / probs[:3].sum()
    lines.append(emit_array("kQmlThreeClassProbs", marg))

    # Wine: per-class counts, train sizes ceil(0.8 N_c), PCA variances (k=4).
    feats, labels = load_csv(ROOT / "data" / "wine.csv")
    counts = np.bincount(labels)
    lines.append(emit_array("kWineClassCounts", counts, "{}"))
    lines.append(emit_array("kWineTrainCounts",
                            [math.ceil(0.8 * c) for c in counts], "{}"))
    cov = np.cov(feats, rowvar=False)
    ev = np.sort(np.linalg.eigvalsh(cov))[::-1]
    lines.append(emit_array("kWinePcaVariance", ev[:4]))
    lines.append(emit_array("kWineTotalVariance", [np.trace(cov)]))

    lines += ["", "} // namespace oracle", ""]
    print("\n".join(lines))


if __name__ == "__main__":
    main()
