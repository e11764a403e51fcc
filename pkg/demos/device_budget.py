"""Membrane and HBAR device budgets behind the strain drive.

Run: python3 demos/device_budget.py
"""

from lambdagate import device


def main():
    mm = device.membrane_modes()
    print(f"membrane (1,2) mode: {mm['f_nm'][(1, 2)]:.2f} MHz, m_eff {mm['m_eff_pg']:.2f} pg, "
          f"k {mm['k_ss']:.0f} N/m")

    # A 1% fabrication asymmetry splits the doublet; electrostatic softening closes it.
    for cov in (1.0, 0.5):
        t = device.electrostatic_tuning(0.01, coverage=cov)
        print(f"coverage {cov:.1f}: split {t['delta_f_MHz']:.3f} MHz, V_req {t['V_req']:.2f} V, "
              f"headroom {t['headroom']:.2f} V")

    hb = device.hbar_design()
    print(f"\nHBAR FSR {hb['FSR_MHz']:.2f} MHz, matching field {hb['B_z_G']:.1f} G, "
          f"overtones {hb['overtones']}")
    b = device.hbar_budget()
    print(f"drive {b['V_RF'] * 1e3:.1f} mV, Rabi {b['Omega_m_kHz']:.2f} kHz, power {b['power_mW']:.3g} mW, "
          f"Q_max {b['Q_max']:.0f}, pre-ring {b['pre_ring_us']:.2f} us, heating {b['delta_T_K']:.2e} K")

    s = device.platform_stark_report()
    print(f"\nAC Stark shift NV {s['NV_delta_ac_kHz']:.2f} kHz vs SiC {s['SiC_delta_ac_kHz']:.3f} kHz "
          f"(ratio {s['ratio']:.1f})")


if __name__ == "__main__":
    main()
