"""Recover an RSA plaintext from the public key alone, on n = 33, e = 3."""

from localinv import invert_local
from localinv.field import encode_bits
from localinv.oracle import exact_lc
from localinv.targets import RsaInstance, rsa_fe_map

inst = RsaInstance(33, 3)
fmap = rsa_fe_map(inst)
c = 26
y = encode_bits(c, inst.bits)

x = y
trail = [c]
for _ in range(4):
    x = fmap(x)
    trail.append(x.to_int())
print("iterates of c under m -> m^3 mod 33:", trail)

out = invert_local(fmap, y, 64)
print("with the return-to-c shortcut:", out.tag, "m =", out.x.to_int(), "period", out.period)

out = invert_local(fmap, y, 64, shortcut=False)
print("through the recurrence:", out.tag, "m =", out.x.to_int(), "lc", out.lc, "minpoly", out.minpoly)

N, mp = exact_lc(fmap, y)
print("exhaustive check: period", N, "linear complexity", mp.degree)
print("5^3 mod 33 =", pow(5, 3, 33))
