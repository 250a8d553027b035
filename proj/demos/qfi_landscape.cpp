// Prints the two-peak QFI landscape of the resonator probe next to the
// single-peak thermal-oscillator baseline.
#include <cstdio>

#include "mtcs/metrology.hpp"

int main() {
    const double omega_q = 0.04, omega_r = 1.0, g = 0.04;
    std::printf("# %10s %14s %14s\n", "T", "qfi_mtcs", "qfi_thermal_ho");
    for (int i = 0; i <= 60; ++i) {
        const double t = 0.005 * std::pow(400.0, i / 60.0);  // 0.005 .. 2
        const mtcs::SystemParams sp(omega_q, omega_r, g, t);
        std::printf("%12.5g %14.6g %14.6g\n", t, mtcs::qfi_mtcs_closed(sp),
                    mtcs::qfi_thermal_ho(omega_r, t));
    }
    return 0;
}
