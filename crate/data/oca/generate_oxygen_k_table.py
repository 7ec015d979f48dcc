"""Generate the bundled oxygen K-shell one-centre Auger integral table.

Values are <chi_Elm chi_1s | chi_nu chi_rho> (physicists' notation, atomic
units) over the oxygen minimal-basis atomic orbitals 1s, 2s, 2px, 2py, 2pz,
taken as the leading ANO-RCC contractions (two s, one p) of the basis-set
exchange data shipped with PySCF.  The continuum function
chi_Elm = u_l(r)/r * Y_lm is an energy-normalised partial wave in the static
(Hartree) potential of O^{2+} 1s^2 2s^2 2p^2 built from the same orbitals, at a
single kinetic energy, Schmidt-orthogonalised to the occupied bound orbitals of
the same l.  Real spherical harmonics are used throughout.

Requires numpy and pyscf (only for the basis-set data).

Usage: python3 generate_oxygen_k_table.py > oxygen_k.csv
"""
import numpy as np

HARTREE_EV = 27.211386245988
E_KIN_EV = 500.0
L_MAX = 2

def ano_shell(l, column):
    from pyscf import gto

    for shell in gto.basis.load("ano-rcc", "O"):
        if shell[0] == l:
            exps = [p[0] for p in shell[1:]]
            coefs = [p[1 + column] for p in shell[1:]]
            return exps, coefs
    raise KeyError(l)


def contracted_radial(shell, l, r):
    exps, coefs = shell
    f = np.zeros_like(r)
    for a, c in zip(exps, coefs):
        # primitive normalisation for r^l exp(-a r^2)
        norm = np.sqrt(2 ** (2 * l + 3.5) * a ** (l + 1.5) / np.sqrt(np.pi) / np.prod(np.arange(2 * l + 1, 0, -2)))
        f += c * norm * r**l * np.exp(-a * r * r)
    return f


S1 = ano_shell(0, 0)
S2 = ano_shell(0, 1)
P2 = ano_shell(1, 0)


h = 2e-4
r = np.arange(1, int(80.0 / h) + 1) * h
w = np.full_like(r, h)
w[-1] *= 0.5


def normalise(f):
    return f / np.sqrt(np.sum(f * f * r * r * w))


# radial parts R(r) with chi = R(r) Y_lm
r1s = normalise(contracted_radial(S1, 0, r))
r2s_raw = normalise(contracted_radial(S2, 0, r))
r2p = normalise(contracted_radial(P2, 1, r))
ov = np.sum(r1s * r2s_raw * r * r * w)
print(f"# ANO 1s/2s overlap on the grid before orthogonalisation: {ov:.2e}")
r2s_orth = normalise(r2s_raw - ov * r1s)

# Hartree potential of 1s^2 2s^2 2p^2
dens = (2 * r1s**2 + 2 * r2s_orth**2 + 2 * r2p**2) * r * r
inner = np.cumsum(dens * w)
outer = np.cumsum((dens / r * w)[::-1])[::-1]
v_h = inner / r + (outer - dens / r * w)
v = -8.0 / r + v_h

energy = E_KIN_EV / HARTREE_EV
k_inf = np.sqrt(2 * energy)


def continuum(l):
    q = l * (l + 1) / r**2 + 2 * (v - energy)
    u = np.zeros_like(r)
    u[0] = r[0] ** (l + 1)
    u[1] = r[1] ** (l + 1)
    f = 1 - h * h * q / 12
    for i in range(1, len(r) - 1):
        u[i + 1] = ((12 - 10 * f[i]) * u[i] - f[i - 1] * u[i - 1]) / f[i + 1]
    # energy normalisation from the local WKB amplitude over the tail
    tail = slice(len(r) // 2, len(r) - 2)
    du = np.gradient(u, h)
    k_loc = np.sqrt(np.maximum(2 * (energy - v) - l * (l + 1) / r**2, 1e-12))
    amp = np.sqrt(u**2 + (du / k_loc) ** 2) * np.sqrt(k_loc)
    scale = np.sqrt(2 / np.pi) / np.mean(amp[tail])
    return u * scale


def y_k(fa, fb, k):
    """int r2^2 fa fb r<^k / r>^(k+1) dr2 as a function of r1."""
    d = fa * fb * r * r * w
    inner = np.cumsum(d * r**k)
    outer = np.cumsum((d / r ** (k + 1))[::-1])[::-1] - d / r ** (k + 1)
    return inner / r ** (k + 1) + outer * r**k


def real_ylm(l, m, x, y, z):
    if l == 0:
        return np.full_like(x, 0.5 / np.sqrt(np.pi))
    if l == 1:
        c = np.sqrt(3 / (4 * np.pi))
        return c * {-1: y, 0: z, 1: x}[m]
    if l == 2:
        c = 0.5 * np.sqrt(15 / np.pi)
        return {
            -2: c * x * y,
            -1: c * y * z,
            0: 0.25 * np.sqrt(5 / np.pi) * (3 * z * z - 1),
            1: c * x * z,
            2: 0.5 * c * (x * x - y * y),
        }[m]
    raise ValueError(l)


# product quadrature on the sphere, exact for the low degrees needed here
nodes, weights = np.polynomial.legendre.leggauss(16)
phis = np.arange(32) * 2 * np.pi / 32
ct, ph = np.meshgrid(nodes, phis, indexing="ij")
wt = np.outer(weights, np.full(32, 2 * np.pi / 32))
st = np.sqrt(1 - ct * ct)
X, Y, Z = st * np.cos(ph), st * np.sin(ph), ct


def gaunt(a, b, c):
    return np.sum(real_ylm(*a, X, Y, Z) * real_ylm(*b, X, Y, Z) * real_ylm(*c, X, Y, Z) * wt)


mbs = [("1s", r1s, (0, 0)), ("2s", r2s_orth, (0, 0)),
       ("2px", r2p, (1, 1)), ("2py", r2p, (1, -1)), ("2pz", r2p, (1, 0))]

print("# oxygen K-shell OCA integrals <chi_Elm chi_1s|chi_nu chi_rho>, hartree atomic units")
print(f"# continuum: energy-normalised partial waves at E_kin = {E_KIN_EV} eV in the static O2+ (1s2 2s2 2p2) Hartree potential of leading ANO-RCC orbitals, Schmidt-orthogonalised to the occupied same-l orbitals")
print("# generated by data/oca/generate_oxygen_k_table.py")
print("element,core,l,m,nu,rho,value")
bound = {0: [r1s, r2s_orth], 1: [r2p], 2: []}


def orthogonalised(l):
    """Partial wave with its projection on the occupied same-l orbitals removed."""
    f = continuum(l) / r
    for b in bound[l]:
        f = f - np.sum(f * b * r * r * w) * b
    return f


cont = {l: orthogonalised(l) for l in range(L_MAX + 1)}
for l in range(L_MAX + 1):
    for m in range(-l, l + 1):
        for nu_name, nu_rad, nu_lm in mbs:
            for rho_name, rho_rad, rho_lm in mbs:
                k = rho_lm[0]
                # electron 2: 1s * rho -> multipole k = l_rho, q = m_rho
                ang2 = 1 / np.sqrt(4 * np.pi)
                ang1 = gaunt((l, m), nu_lm, rho_lm)
                if abs(ang1) < 1e-14:
                    val = 0.0
                else:
                    pot = y_k(r1s, rho_rad, k)
                    rad = np.sum(cont[l] * nu_rad * pot * r * r * w)
                    val = 4 * np.pi / (2 * k + 1) * ang1 * ang2 * rad
                print(f"O,1s,{l},{m},{nu_name},{rho_name},{val:.12e}")
