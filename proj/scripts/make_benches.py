#!/usr/bin/env python3
"""Generate the ISCAS-85-profile .bench fixtures under benches/.

The original ISCAS-85 netlists are not redistributed here; these files are
deterministic stand-ins that reproduce each circuit's published interface
(input/output counts) and gate count, with logic depth in the range of the
originals, built only from the .bench primitive set. c17.bench is
hand-written and not touched by this script.

Run from the repository root:  python3 scripts/make_benches.py
"""

import random
from pathlib import Path

# name -> (inputs, outputs, gates, depth, taper, comment). taper < 1 thins the
# levels toward the deep end, skewing the path-length histogram the way
# irregular control logic does; 1.0 keeps the levels uniform (array-like).
PROFILES = {
    "c432": (36, 7, 160, 26, 0.97, "27-channel interrupt controller profile"),
    "c499": (41, 32, 202, 14, 0.98, "32-bit single-error-correction profile"),
    "c880": (60, 26, 383, 26, 0.97, "8-bit ALU profile"),
    "c1355": (41, 32, 546, 26, 0.98, "32-bit single-error-correction profile"),
    "c1908": (33, 25, 880, 36, 0.98, "16-bit error detector/corrector profile"),
    "c2670": (233, 140, 1193, 26, 0.97, "12-bit ALU and controller profile"),
    "c3540": (50, 22, 1669, 40, 0.98, "8-bit ALU profile"),
    "c5315": (178, 123, 2307, 38, 0.98, "9-bit ALU profile"),
    "c6288": (32, 32, 2406, 50, 1.0, "16x16 multiplier profile"),
    "c7552": (207, 108, 3512, 36, 0.98, "32-bit adder/comparator profile"),
}

# Weighted primitive mix; NOT/BUFF are unary, XOR/XNOR kept at two inputs.
FUNCS = [
    ("NAND", (2, 4), 28),
    ("NOR", (2, 4), 18),
    ("AND", (2, 4), 14),
    ("OR", (2, 4), 10),
    ("XOR", (2, 2), 8),
    ("XNOR", (2, 2), 4),
    ("NOT", (1, 1), 14),
    ("BUFF", (1, 1), 4),
]


def partition(total, parts, rng, taper=1.0):
    """Split `total` into `parts` positive counts, thinning by `taper`."""
    weights = [rng.uniform(0.6, 1.4) * taper**k for k in range(parts)]
    scale = total / sum(weights)
    counts = [max(1, int(w * scale)) for w in weights]
    i = 0
    while sum(counts) > total:
        if counts[i % parts] > 1:
            counts[i % parts] -= 1
        i += 1
    i = 0
    while sum(counts) < total:
        counts[i % parts] += 1
        i += 1
    return counts


def build(name, n_in, n_out, n_gates, depth, taper, note, rng):
    funcs = [f for f, _, w in FUNCS for _ in range(w)]
    spans = {f: s for f, s, _ in FUNCS}

    pis = [f"G{i}" for i in range(1, n_in + 1)]
    levels = [list(pis)]           # nets by level; level 0 = primary inputs
    all_nets = list(pis)
    unread = {n for n in pis}
    hubs = []                      # high-fanout nets (selects, enables)
    lines = []

    counts = partition(n_gates, depth, rng, taper)
    next_id = n_in + 1
    for level, count in enumerate(counts, start=1):
        level_nets = []
        prev = levels[level - 1]
        prev_unread = [n for n in prev if n in unread]
        for _ in range(count):
            func = rng.choice(funcs)
            lo, hi = spans[func]
            arity = rng.randint(lo, hi)
            ins = []
            # Anchor one input on the previous level, preferring nets that
            # nobody reads yet so little dead logic is left behind.
            if prev_unread:
                ins.append(prev_unread.pop(rng.randrange(len(prev_unread))))
            else:
                ins.append(rng.choice(prev))
            while len(ins) < arity:
                unread_pis = [n for n in pis if n in unread]
                r = rng.random()
                if r < 0.2 and hubs:
                    cand = rng.choice(hubs)
                elif r < 0.6:
                    # keep side paths near-critical: braid with recent levels
                    recent = levels[max(0, level - 2):level]
                    pool = [n for lvl in recent for n in lvl]
                    cand = rng.choice(pool)
                elif r < 0.78 and unread_pis:
                    cand = rng.choice(unread_pis)
                elif r < 0.9 and level > 1:
                    cand = rng.choice(levels[rng.randrange(1, level)])
                else:
                    cand = rng.choice(all_nets)
                if cand not in ins:
                    ins.append(cand)
            for n in ins:
                unread.discard(n)
            out = f"G{next_id}"
            next_id += 1
            lines.append(f"{out} = {func}({', '.join(ins)})")
            level_nets.append(out)
            all_nets.append(out)
            unread.add(out)
            if rng.random() < 0.04 and len(hubs) < max(2, n_gates // 50):
                hubs.append(out)
        levels.append(level_nets)

    gate_outs = all_nets[n_in:]
    sinks = [n for n in gate_outs if n in unread]
    if len(sinks) >= n_out:
        # Spread the outputs across sink depths instead of only the deepest.
        stride = len(sinks) / n_out
        pos = [sinks[int(i * stride)] for i in range(n_out)]
    else:
        pos = list(sinks)
    extra = [n for n in reversed(gate_outs) if n not in pos]
    while len(pos) < n_out:
        pos.append(extra.pop(0))
    pos = sorted(pos, key=lambda n: int(n[1:]))

    hdr = [
        f"# {name}",
        f"# {note}; structurally representative stand-in, not the original netlist",
        f"# generated by scripts/make_benches.py",
        f"# {n_in} inputs",
        f"# {n_out} outputs",
        f"# {n_gates} gates",
    ]
    body = [f"INPUT({p})" for p in pis] + [f"OUTPUT({p})" for p in pos] + lines
    return "\n".join(hdr + body) + "\n"


def main():
    out_dir = Path(__file__).resolve().parent.parent / "benches"
    out_dir.mkdir(exist_ok=True)
    for name, (n_in, n_out, n_gates, depth, taper, note) in PROFILES.items():
        rng = random.Random(f"moosize-{name}")
        text = build(name, n_in, n_out, n_gates, depth, taper, note, rng)
        (out_dir / f"{name}.bench").write_text(text)
        print(f"wrote {name}.bench ({n_gates} gates, depth budget {depth})")


if __name__ == "__main__":
    main()
