#!/usr/bin/env python3
# Copyright 2026 The blockprune Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http:#www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent FLOPs calculator used to freeze golden values in the C++ tests.

Written straight from the stage formulas with Python's arbitrary-precision
integers; shares no code with the library. Run it to print the values that
cost_model_test.cc and the acceptance binary pin.
"""

ARCH_2B = dict(Lv=24, Dv=1024, Dfv=4096, M=2, ds=3,
               Ll=28, Dl=2048, Dfl=6144, nq=16, nkv=8)


def flops(a, n, t, pages=1):
    g = a["M"] ** 2
    assert n % g == 0
    vit = a["Lv"] * (n * (8 * a["Dv"] ** 2 + 4 * a["Dv"] * a["Dfv"])
                     + 4 * n * n * a["Dv"])
    din = g * a["Dv"]
    merger = (1 + a["ds"]) * (n // g) * (2 * din * din + 2 * din * a["Dl"])
    dh = a["Dl"] // a["nq"]
    per_tok = (2 * a["Dl"] * (2 * a["nq"] + 2 * a["nkv"]) * dh
               + 6 * a["Dl"] * a["Dfl"])
    nl = pages * (n // g) + t
    llm = a["Ll"] * (nl * per_tok + 4 * nl * nl * a["Dl"])
    vit *= pages
    merger *= pages
    return vit, merger, llm, vit + merger + llm


def show(label, n, t, pages=1):
    v, m, l, tot = flops(ARCH_2B, n, t, pages)
    print(f"{label}: N={n} T={t} pages={pages}")
    print(f"  vit={v} merger={m} llm={l} total={tot}")
    return tot


if __name__ == "__main__":
    show("square 1024px", 4096, 128)
    show("no text", 4096, 0)
    show("tiny", 4, 0)
    # Mean document page: 1284x1405 padded to 32px blocks -> 41 x 44 blocks.
    blocks = 41 * 44
    kept = round(0.503 * blocks)
    full = show("page full", blocks * 4, 0)
    pruned = show("page pruned", kept * 4, 0)
    print(f"  speedup={full / pruned:.6f}")
    for pages in (8, 51):
        f = show("multi-page full", blocks * 4, 0, pages)
        p = show("multi-page pruned", kept * 4, 0, pages)
        print(f"  speedup={f / p:.6f}")
