"""Print quadrature constants next to their closed forms."""

import sys

from schatten_lab.cli import calibration_rows


def main():
    s_list = [float(v) for v in sys.argv[1:]] or [0.5, 0.25, -0.5, -1.5, -2.5, -3.3, 1.5]
    print(f"{'s':>6} {'branch':>8} {'c_s':>14} {'rel err':>10} {'x^s err':>10} {'literal kernel err':>19}")
    for r in calibration_rows(s_list):
        lit = r.get("literal_kernel_error")
        lit = "" if lit is None else f"{lit:.3g}"
        print(f"{r['s']:>6g} {r['branch']:>8} {r['c_s']:>14.10g} {r['constant_error']:>10.2g} {r['quadrature_error']:>10.2g} {lit:>19}")


if __name__ == "__main__":
    main()
