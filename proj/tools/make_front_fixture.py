#!/usr/bin/env python3
"""Writes data/lambda3333.front: a 1D cross-section of the three-colour unknot front.

Strands are chains of smooth steps between knots (x, y). A component is an upper and a lower
strand that meet at cusps at both ends. 0-cells sit at cusps, crossings and midpoints between
consecutive events; 1-cells join consecutive 0-cells; each 1-cell carries one 2-cell.
"""
import sys
from itertools import combinations
from pathlib import Path

SCALE = 10000


def step_chain(knots):
    def y(x):
        for (x0, y0), (x1, y1) in zip(knots, knots[1:]):
            if x0 <= x <= x1:
                t = (x - x0) / (x1 - x0)
                return y0 + (y1 - y0) * t * t * (3 - 2 * t)
        raise ValueError(x)
    return y


def unknot(x0, x1, mid, top, bottom):
    return [(x0, mid), ((x0 + x1) / 2, top), (x1, mid)], [(x0, mid), ((x0 + x1) / 2, bottom), (x1, mid)]


def components():
    out = []
    zig = [(-2, 0)]
    for i, x in enumerate([-0.33, 0.5, 1.33, 2.16, 3, 3.83, 4.67, 5.5, 6.33, 7.16, 8]):
        zig.append((x, -2 if i % 2 == 0 else -1))
    zig.append((9.67, 0))
    out.append(("gg", 1, [(-2, 0), (3.83, 2), (9.67, 0)], zig))
    for name, x0, x1 in [("1g", -1, 0.34), ("g1", 0.66, 2), ("2g", 2.33, 3.67),
                         ("g2", 4, 5.34), ("3g", 5.66, 7), ("g3", 7.33, 8.67)]:
        up, low = unknot(x0, x1, -2.1, -1.7, -2.5)
        out.append((name, 0, up, low))
    for name, x0, x1 in [("11", -1, 2), ("22", 2.33, 5.34), ("33", 5.66, 8.67)]:
        m = (x0 + x1) / 2
        up = [(x0, -2.6), ((x0 + m) / 2, -2.2), (m, -2.6), ((m + x1) / 2, -2.2), (x1, -2.6)]
        out.append((name, -1, up, [(x0, -2.6), (m, -3.6), (x1, -2.6)]))
    return out


def main():
    strands = []  # (sheet name, maslov, x0, x1, height function)
    for name, top_mu, up, low in components():
        strands.append((name + ".u", top_mu, up[0][0], up[-1][0], step_chain(up)))
        strands.append((name + ".l", top_mu - 1, low[0][0], low[-1][0], step_chain(low)))
    cusps = sorted({s[2] for s in strands} | {s[3] for s in strands})

    crossings = []
    for s, t in combinations(strands, 2):
        lo, hi = max(s[2], t[2]), min(s[3], t[3])
        if lo >= hi:
            continue
        n = 4000
        xs = [lo + (hi - lo) * i / n for i in range(1, n)]
        f = [s[4](x) - t[4](x) for x in xs]
        for i in range(len(xs) - 1):
            if f[i] * f[i + 1] < 0:
                a, b = xs[i], xs[i + 1]
                for _ in range(60):
                    c = (a + b) / 2
                    if (s[4](a) - t[4](a)) * (s[4](c) - t[4](c)) <= 0:
                        b = c
                    else:
                        a = c
                if s[1] != t[1]:
                    sys.exit(f"strands {s[0]} and {t[0]} with different potentials cross at {a:.4f}")
                crossings.append(((a + b) / 2, {s[0], t[0]}))
    events = sorted([(x, set()) for x in cusps] + crossings, key=lambda e: e[0])
    points = []
    for i, e in enumerate(events):
        points.append(e)
        if i + 1 < len(events):
            points.append(((e[0] + events[i + 1][0]) / 2, set()))

    def sheets_at(x, open_interval=None):
        rows = []
        for name, mu, x0, x1, y in strands:
            if open_interval:
                a, b = open_interval
                if not (x0 <= a and b <= x1):
                    continue
            else:
                if not (x0 <= x <= x1):
                    continue
                if (x == x0 or x == x1) and name.endswith(".u"):
                    continue  # one sheet at a cusp: the lower strand continues to it
            rows.append((name, mu, round(y(x) * SCALE)))
        return rows

    lines = ["# cross-section front: cells, then sheets (cell sheet maslov height)", "[cells]"]
    sheet_lines = ["[sheets]"]
    for i, (x, cross) in enumerate(points):
        lines.append(f"v{i} 0")
        rows = sheets_at(x)
        if cross:
            hs = [h for n, _, h in rows if n in cross]
            rows = [(n, mu, hs[0] if n in cross else h) for n, mu, h in rows]
        sheet_lines += [f"v{i} {n} {mu} {h}" for n, mu, h in rows]
    for i in range(len(points) - 1):
        a, b = points[i][0], points[i + 1][0]
        lines.append(f"e{i} 1 v{i} v{i + 1}")
        lines.append(f"f{i} 2 e{i}")
        rows = sheets_at((a + b) / 2, (a, b))
        for cell in (f"e{i}", f"f{i}"):
            sheet_lines += [f"{cell} {n} {mu} {h}" for n, mu, h in rows]
    out = Path(__file__).resolve().parent.parent / "data" / "lambda3333.front"
    out.write_text("\n".join(lines + sheet_lines) + "\n")
    print(f"{len(points)} vertices, {len(crossings)} crossings -> {out}")


if __name__ == "__main__":
    main()
