"""Reference values for the unit tests, computed without the C++ library.

Run with python3; prints the constants frozen in tests/unit/oracle_values.hpp.
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 40


def smooth_step(t):
    if t <= 0:
        return mp.mpf(0)
    if t >= 1:
        return mp.mpf(1)
    a, b = mp.e ** (-1 / t), mp.e ** (-1 / (1 - t))
    return a / (a + b)


def chi(r):
    return 1 - smooth_step((mp.mpf(r) - mp.mpf(3) / 4) / (mp.mpf(4) / 3 - mp.mpf(3) / 4))


def phi(r):
    return chi(mp.mpf(r) / 2) - chi(r)


def block(j, r):
    return chi(r) if j < 0 else phi(mp.ldexp(mp.mpf(r), -j))


x, y, z = sp.symbols("x y z", real=True)


def curl(v):
    return sp.Matrix([sp.diff(v[2], y) - sp.diff(v[1], z),
                      sp.diff(v[0], z) - sp.diff(v[2], x),
                      sp.diff(v[1], x) - sp.diff(v[0], y)])


def hall(b):
    return sp.simplify(curl(curl(b).cross(b)))


def emit(name, value):
    print(f"inline constexpr double {name} = {mp.nstr(mp.mpf(value), 20)};")


# hall term, one mode and two modes (2.5D, no z dependence)
print("// hall one mode:", list(hall(sp.Matrix([0, 0, sp.sin(x)]))))
h2 = hall(sp.Matrix([sp.sin(y), 0, sp.sin(x)]))
print("// hall two modes b=(sin y, 0, sin x):", [sp.expand(sp.expand_trig(c)) for c in h2])

# Taylor-Green pressure from -lap P = div(u.grad u)
u = sp.Matrix([sp.sin(x) * sp.cos(y), -sp.cos(x) * sp.sin(y), 0])
adv = sp.Matrix([sum(u[i] * sp.diff(u[c], v) for i, v in enumerate((x, y, z))) for c in range(3)])
div_adv = sp.simplify(sp.diff(adv[0], x) + sp.diff(adv[1], y))
P = (sp.cos(2 * x) + sp.cos(2 * y)) / 4
print("// taylor-green pressure residual:", sp.simplify(-sp.diff(P, x, 2) - sp.diff(P, y, 2) - div_adv))

# commutator of v = (0, sin 5x, 0) and f = sin y: R_j = (block_j(sqrt 26) - block_j(1)) sin 5x cos y,
# whose (5, 1) coefficient is -i/4 times the mask difference
for j in (0, 1, 2):
    emit(f"kCommutatorImag_j{j}", -(block(j, mp.sqrt(26)) - block(j, 1)) / 4)

# product ratio for f = cos x, g = cos y, s = 5/2 (volume factors cancel)
s = mp.mpf(5) / 2
fg = mp.sqrt(4 * (1 + 2) ** s / 16)
g = mp.sqrt(2 * (1 + 1) ** s / 4)
emit("kProductRatioCosCos", fg / (2 * g))

# blocks/weight norm ratio for a single mode |k| = 4, s = 2
blocks = mp.sqrt(sum(mp.mpf(2) ** (2 * j * 2) * block(j, 4) ** 2 for j in range(-1, 10)))
emit("kBlocksOverWeight_k4_s2", blocks / mp.sqrt((1 + 16) ** 2))

# masks at |k| = 4 (single mode split)
for j in (0, 1, 2):
    emit(f"kBlockAt4_j{j}", block(j, 4))

# lipschitz of sin(x + 0.3) + 0.5 sin(2y + 0.7): sup |f| + sup |grad f|
emit("kLipschitzShifted", mp.mpf(3) / 2 + mp.sqrt(2))
