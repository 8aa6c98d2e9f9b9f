# Which levels does the filtration attain?  Compare the Smith valuations
# with the l-valuations of the parabolic indices [G : P_J].

from steinberg import build_parabolic_table, filtration

for n, q, ell in [(3, 2, 3), (3, 3, 2), (4, 2, 3), (4, 3, 2)]:
    T = build_parabolic_table(n, q, ell)
    rep = filtration(n, q, ell)
    print(f"n={n} q={q} l={ell}  [G:B]={T.rows[0][2]}  X={T.X}")
    for lv in rep.levels:
        print(f"    k={lv['k']}  dim I(k)={lv['dimIk']:4d}  dim M(k)={lv['dimMk']:4d}  in X: {lv['inX']}")
    print("    levels match X:", rep.gow5_levels_match)

# When l does not divide [G:B] there is a single level and I-bar is simple.

rep = filtration(2, 4, 3)
print("n=2 q=4 l=3: [G:B] = 5, single level:", rep.steinberg_simple)
