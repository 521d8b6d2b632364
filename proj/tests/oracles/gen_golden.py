#!/usr/bin/env python3
# Copyright 2026 The sspsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent oracle for the crypto golden vectors.

Pure-Python affine P-256 arithmetic plus hashlib/hmac. Shares no code with
the C++ implementation. Regenerate with:

    python3 tests/oracles/gen_golden.py > tests/data/golden_vectors.txt
"""
import hashlib
import hmac

P = 0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF
A = P - 3
B = 0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B
N = 0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551
G = (0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
     0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5)


def add(p1, p2):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    if p1[0] == p2[0] and (p1[1] + p2[1]) % P == 0:
        return None
    if p1 == p2:
        lam = (3 * p1[0] * p1[0] + A) * pow(2 * p1[1], -1, P) % P
    else:
        lam = (p2[1] - p1[1]) * pow(p2[0] - p1[0], -1, P) % P
    x = (lam * lam - p1[0] - p2[0]) % P
    return (x, (lam * (p1[0] - x) - p1[1]) % P)


def mul(k, pt):
    acc = None
    while k:
        if k & 1:
            acc = add(acc, pt)
        pt = add(pt, pt)
        k >>= 1
    return acc


def on_curve(pt):
    x, y = pt
    return (y * y - (x * x * x + A * x + B)) % P == 0


def h(n, width):
    return format(n, "0%dx" % (2 * width))


def drbg(label, size):
    out = b""
    i = 0
    while len(out) < size:
        out += hashlib.sha256(("%s/%d" % (label, i)).encode()).digest()
        i += 1
    return out[:size]


def scalar(label):
    return int.from_bytes(drbg(label, 32), "big") % (N - 1) + 1


def x32(pt):
    return pt[0].to_bytes(32, "big")


def f1(pka, pkb, nonce, r):
    return hmac.new(nonce, x32(pka) + x32(pkb) + r, hashlib.sha256).digest()[:16]


def g(pka, pkb, na, nb):
    d = hashlib.sha256(x32(pka) + x32(pkb) + na + nb).digest()
    return int.from_bytes(d[-4:], "big") % 1000000


def f2(dh, na, nb, addr_a, addr_b):
    msg = b"btlk" + na + nb + addr_a.to_bytes(6, "big") + addr_b.to_bytes(6, "big")
    return hmac.new(dh, msg, hashlib.sha256).digest()[:16]


def f3(dh, na, nb, r, io, addr_a, addr_b):
    msg = b"btck" + na + nb + r + bytes([io]) + addr_a.to_bytes(6, "big") + addr_b.to_bytes(6, "big")
    return hmac.new(dh, msg, hashlib.sha256).digest()[:16]


def main():
    print("# Golden vectors from tests/oracles/gen_golden.py (independent oracle).")
    print("# point <scalar> <x> <y>")
    print("# ecdh <private> <peer_x> <peer_y> <shared_x>")
    print("# f1 <pka_x> <pka_y> <pkb_x> <pkb_y> <nonce> <r> <commitment>")
    print("# g <pka_x> <pka_y> <pkb_x> <pkb_y> <na> <nb> <value_u32>")
    print("# f2 <dh> <na> <nb> <addr_a> <addr_b> <link_key>")
    print("# f3 <dh> <na> <nb> <r> <io> <addr_a> <addr_b> <check>")

    scalars = [1, 2, 3, N - 1] + [scalar("point/%d" % i) for i in range(8)]
    for k in scalars:
        pt = mul(k, G)
        assert on_curve(pt)
        print("point", h(k, 32), h(pt[0], 32), h(pt[1], 32))

    # NIST CAVS KAS ECC CDH P-256, COUNT = 0.
    d = 0x7d7dc5f71eb29ddaf80d6214632eeae03d9058af1fb6d22ed80badb62bc1a534
    q = (0x700c48f77f56584c5cc632ca65640db91b6bacce3a4df6b42ce7cc838833d287,
         0xdb71e509e3fd9b060ddb20ba5c51dcc5948d46fbf640dfe0441782cab85fa4ac)
    z = mul(d, q)
    assert z[0] == 0x46fc62106420ff012e54a434fbdd2d25ccc5852060561e68040dd7778997bd7b
    print("ecdh", h(d, 32), h(q[0], 32), h(q[1], 32), h(z[0], 32))
    for i in range(10):
        a = scalar("ecdh/a/%d" % i)
        b = scalar("ecdh/b/%d" % i)
        pb = mul(b, G)
        z = mul(a, pb)
        assert z == mul(b, mul(a, G))
        print("ecdh", h(a, 32), h(pb[0], 32), h(pb[1], 32), h(z[0], 32))

    for i in range(12):
        pka = mul(scalar("f1/a/%d" % i), G)
        pkb = mul(scalar("f1/b/%d" % i), G)
        nonce = drbg("f1/n/%d" % i, 16)
        r = bytes(16) if i % 3 == 0 else drbg("f1/r/%d" % i, 16)
        c = f1(pka, pkb, nonce, r)
        print("f1", h(pka[0], 32), h(pka[1], 32), h(pkb[0], 32), h(pkb[1], 32),
              nonce.hex(), r.hex(), c.hex())

    zero_pt = (0, 0)
    print("g", h(0, 32), h(0, 32), h(0, 32), h(0, 32), bytes(16).hex(), bytes(16).hex(),
          h(g(zero_pt, zero_pt, bytes(16), bytes(16)), 4))
    for i in range(11):
        pka = mul(scalar("g/a/%d" % i), G)
        pkb = mul(scalar("g/b/%d" % i), G)
        na = drbg("g/na/%d" % i, 16)
        nb = drbg("g/nb/%d" % i, 16)
        print("g", h(pka[0], 32), h(pka[1], 32), h(pkb[0], 32), h(pkb[1], 32),
              na.hex(), nb.hex(), h(g(pka, pkb, na, nb), 4))

    for i in range(12):
        dh = drbg("f2/dh/%d" % i, 32)
        na = drbg("f2/na/%d" % i, 16)
        nb = drbg("f2/nb/%d" % i, 16)
        addr_a = int.from_bytes(drbg("f2/aa/%d" % i, 6), "big")
        addr_b = int.from_bytes(drbg("f2/ab/%d" % i, 6), "big")
        print("f2", dh.hex(), na.hex(), nb.hex(), h(addr_a, 6), h(addr_b, 6),
              f2(dh, na, nb, addr_a, addr_b).hex())

    for i in range(12):
        dh = drbg("f3/dh/%d" % i, 32)
        na = drbg("f3/na/%d" % i, 16)
        nb = drbg("f3/nb/%d" % i, 16)
        r = bytes(16) if i % 4 == 0 else drbg("f3/r/%d" % i, 16)
        io = drbg("f3/io/%d" % i, 1)[0] & 0x1F
        addr_a = int.from_bytes(drbg("f3/aa/%d" % i, 6), "big")
        addr_b = int.from_bytes(drbg("f3/ab/%d" % i, 6), "big")
        print("f3", dh.hex(), na.hex(), nb.hex(), r.hex(), h(io, 1), h(addr_a, 6), h(addr_b, 6),
              f3(dh, na, nb, r, io, addr_a, addr_b).hex())


if __name__ == "__main__":
    main()
