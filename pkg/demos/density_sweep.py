"""How often random maps on 12 bits give up their pre-images, as the budget M grows."""

from localinv.experiments import DensityConfig, density_run

for M in (8, 16, 32, 64, 128):
    row = []
    for shortcut in (True, False):
        _, s = density_run(DensityConfig({"target": "random_map", "n": 12}, 200, M, seed=1,
                                         shortcut=shortcut))
        row.append(f"{s['fraction_solved']:.3f}")
    print(f"M={M:<4} solved with shortcut {row[0]}  recurrence only {row[1]}")
