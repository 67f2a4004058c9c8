# Copyright 2026 The rsaexh Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference values for the model tests, from direct (non-log) formulas at
50-digit precision. Prints C++ initializers for tests/reference_values.h."""

import mpmath as mp

mp.mp.dps = 50
LN2 = mp.log(2)


def f(lam, x):
    return 1 / (1 + mp.e ** (-lam * x))


def s2(lam, dab, danb, l1):
    wa_a = f(lam, mp.log(1 - l1) + danb)
    wab_a = f(lam, mp.log(l1) + dab)
    return [wa_a, 0, 1 - wa_a], [wab_a, 1 - wab_a, 0]


def base(lam, dab, danb, p):
    sa = f(lam, mp.log(1 - p) + danb)
    sab = f(lam, mp.log(p) + dab)
    l1 = p * sab / (p * sab + (1 - p) * sa)
    return (l1, 1) + s2(lam, dab, danb, l1)


def wrsa(lam, dab, danb, p, w, bayes):
    u_ab, u_a = f(lam, mp.log(p) + dab), f(lam, mp.log(1 - p) + danb)
    k_ab, k_a = f(lam, dab - LN2), f(lam, danb - LN2)
    if bayes:
        num = p * ((1 - w) * u_ab + w * k_ab)
        den = num + (1 - p) * ((1 - w) * u_a + w * k_a)
    else:
        num = p * (1 - w) * u_ab + w * k_ab / 2
        den = num + (1 - p) * (1 - w) * u_a + w * k_a / 2
    l1 = num / den
    return (l1, 1) + s2(lam, dab, danb, l1)


def svrsa(lam, dab, danb, p, q, chi, variant):
    z = 1 + mp.e ** (-lam * danb) + mp.e ** (-lam * dab)
    a, anb, ab = 1 / z, mp.e ** (-lam * danb) / z, mp.e ** (-lam * dab) / z
    t = f(lam, (1 - chi) * mp.log(1 - p) + danb)
    # Joint L1 over (world, QUD).
    joint = {}
    for u, (pa, pab) in {"A": (a, a), "AB": (ab, ab), "AnB": (anb, anb)}.items():
        joint[u] = {("wa", "P"): (1 - p) * (1 - q) * pa, ("wab", "P"): p * (1 - q) * pab}
    joint["A"][("wa", "T")] = (1 - p) * q * t
    joint["A"][("wab", "T")] = 0
    joint["AB"][("wa", "T")] = 0
    joint["AB"][("wab", "T")] = p * q
    joint["AnB"][("wa", "T")] = (1 - p) * q * (1 - t)
    joint["AnB"][("wab", "T")] = 0
    norm = {u: sum(v.values()) for u, v in joint.items()}
    post_a = (joint["A"][("wab", "P")] + joint["A"][("wab", "T")]) / norm["A"]
    post_ab = (joint["AB"][("wab", "P")] + joint["AB"][("wab", "T")]) / norm["AB"]
    cost = {"A": 0, "AB": dab, "AnB": danb}
    order = ["A", "AB", "AnB"]

    def speaker(world, qud):
        util = {}
        for u in order:
            if qud == "P":
                m = joint[u][("wa", "P")] + joint[u][("wab", "P")]
            else:
                m = joint[u][(world, "T")]
            m = m / norm[u]
            util[u] = None if m == 0 else mp.log(m) - cost[u]
        ws = [0 if util[u] is None else mp.e ** (lam * util[u]) for u in order]
        return [w / sum(ws) for w in ws]

    out = [post_a, post_ab]
    for world in ("wa", "wab"):
        tot = speaker(world, "T")
        if variant == 2:
            out.append(tot)
        else:
            par = speaker(world, "P")
            out.append([(1 - q) * x + q * y for x, y in zip(par, tot)])
    return tuple(out)


def lu(lam, dab, danb, p, rho):
    rl, re, ra = rho
    wa_lit, wab_lit = f(lam, mp.log(1 - p) + danb), f(lam, mp.log(p) + dab)
    wa_exh, wab_anti = f(lam, danb), f(lam, dab)
    num = p * (rl * wab_lit + ra * wab_anti)
    den = num + (1 - p) * (rl * wa_lit + re * wa_exh)
    l1 = num / den
    return (l1, 1) + s2(lam, dab, danb, l1)


def li(lam, dab, danb, p, variant):
    e = mp.e
    s_a_wa = (1 + (1 - p) ** lam) / (1 + (1 - p) ** lam + 2 * e ** (-lam * danb))
    s_anb_wa = 1 - s_a_wa
    s_a_wab = 1 / (1 + 2 * e ** (-lam * (mp.log(p) + dab)))
    l1 = p * s_a_wab / (p * s_a_wab + (1 - p) * s_a_wa)
    if variant == 1:
        return (l1, 1, [s_a_wa, 0, s_anb_wa], [s_a_wab, 1 - s_a_wab, 0])
    return (l1, 1) + s2(lam, dab, danb, l1)


def models(lam, dab, danb, xi, p):
    return {
        "kBaseRsa": base(lam, dab, danb, p),
        "kWrsa": wrsa(lam, dab, danb, p, xi, False),
        "kBwrsa": wrsa(lam, dab, danb, p, xi, True),
        "kSvrsa1": svrsa(lam, dab, danb, p, xi, mp.mpf("0.5"), 1),
        "kSvrsa2": svrsa(lam, dab, danb, p, xi, mp.mpf("0.5"), 2),
        "kFreeLu": lu(lam, dab, danb, p, [mp.mpf(1) / 3] * 3),
        "kExhLu": lu(lam, dab, danb, p, [mp.mpf("0.5"), mp.mpf("0.5"), 0]),
        "kRsaLi1": li(lam, dab, danb, p, 1),
        "kRsaLi2": li(lam, dab, danb, p, 2),
    }


def fmt(x):
    return mp.nstr(mp.mpf(x), 17, min_fixed=-30, max_fixed=30)


if __name__ == "__main__":
    cases = [(3, "0.5", "1", "0.3", "0.2"), (3, "0.5", "1", "0.3", "0.7"),
             (10, "0", "2", "0.9", "0.55"), ("0.5", "2", "0", "0.1", "0.95")]
    for lam, dab, danb, xi, p in cases:
        lam, dab, danb, xi, p = map(mp.mpf, (lam, dab, danb, xi, p))
        for name, (pa, pab, wa, wab) in models(lam, dab, danb, xi, p).items():
            vals = [pa, pab] + list(wa) + list(wab)
            print("    {ModelId::%s, %s, %s, %s, %s, %s, {%s}}," % (
                name, fmt(lam), fmt(dab), fmt(danb), fmt(xi), fmt(p),
                ", ".join(fmt(v) for v in vals)))
