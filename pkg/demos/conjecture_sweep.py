"""Run every conjecture over all backdrops with at most four squares."""

from quadstokes import harness


def main(max_squares=4):
    report = harness.run_sweep(list(harness.CONJECTURES), max_squares)
    for c in report["conjectures"]:
        t = c["totals"]
        extra = f" (global reading holds for {t['global_reading_holds']})" if "global_reading_holds" in t else ""
        print(f"{c['id']:<13} inputs={c['scope']['inputs']:<4} holds={t['holds']:<4} "
              f"counterexamples={t['counterexamples']}{extra}")


if __name__ == "__main__":
    main()
