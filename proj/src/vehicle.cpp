#include "mmas/vehicle.hpp"

#include <cmath>
#include <numbers>

namespace mmas {

void VehicleParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw DimensionError(std::string("VehicleParams: ") + name + " must be > 0");
    };
    positive(m, "m");
    positive(m_s, "m_s");
    positive(I_z, "I_z");
    positive(I_xs, "I_xs");
    positive(l_f, "l_f");
    positive(l_r, "l_r");
    positive(h_s, "h_s");
    positive(u, "u");
    const double I_c = composite_roll_inertia();
    if (!(I_c > 0.0)) throw NonPositiveIc(I_c);
}

LinearSystem build_vehicle_system(const VehicleParams& vp, SignConvention signs) {
    vp.validate();
    const double I_c = vp.composite_roll_inertia();
    const double kappa = 1.0 + vp.m_s * vp.m_s * vp.h_s * vp.h_s / (vp.m * I_c);
    const double coscos = std::cos(vp.phi_r) * std::cos(vp.theta_r);
    const double roll_moment = vp.m_s * vp.g * vp.h_s * coscos - vp.k_phi;
    // Standard convention flips every cornering-stiffness force term.
    const double f = signs == SignConvention::AsPrinted ? 1.0 : -1.0;

    Matrix A = Matrix::Zero(4, 4);
    Matrix B = Matrix::Zero(4, 1);

    A(0, 0) = f * kappa * (vp.C_af + vp.C_ar) / (vp.m * vp.u);
    A(0, 1) = f * kappa * (vp.l_f * vp.C_af - vp.l_r * vp.C_ar) / (vp.m * vp.u * vp.u) - 1.0;
    A(0, 2) = vp.m_s * vp.h_s * roll_moment / (vp.m * vp.u * I_c);
    A(0, 3) = -vp.m_s * vp.h_s * vp.c_phi / (vp.m * vp.u * I_c);

    A(1, 0) = f * (vp.l_f * vp.C_af - vp.l_r * vp.C_ar) / vp.I_z;
    A(1, 1) = f * (vp.l_f * vp.l_f * vp.C_af + vp.l_r * vp.l_r * vp.C_ar) / (vp.I_z * vp.u);

    A(2, 3) = 1.0;  // kinematic pair: phi_dot is the fourth state

    A(3, 0) = f * vp.m_s * vp.h_s * (vp.C_af + vp.C_ar) / (vp.m * vp.u * I_c);
    A(3, 1) = f * vp.m_s * vp.h_s * (vp.l_f * vp.C_af - vp.l_r * vp.C_ar) / (vp.m * vp.u * I_c);
    A(3, 2) = roll_moment / I_c;
    A(3, 3) = -vp.c_phi / I_c;

    B(0, 0) = -f * vp.C_af / (vp.m * vp.u);
    B(1, 0) = -f * vp.l_f * vp.C_af / vp.I_z;
    B(3, 0) = -f * vp.m_s * vp.h_s * vp.C_af / (vp.m * vp.u * I_c);

    return {A, B};
}

ParameterBox vehicle_parameter_box() {
    const double deg = std::numbers::pi / 180.0;
    Vector lower(6), upper(6);
    lower << 56280.0, 57890.0, 25200.0, 2100.0, 0.0, 0.0;
    upper << 104520.0, 107510.0, 46800.0, 3900.0, 4.0 * deg, 8.0 * deg;
    return ParameterBox({"C_af", "C_ar", "k_phi", "c_phi", "phi_r", "theta_r"}, lower, upper);
}

VehicleParams apply_uncertain(const VehicleParams& nominal, const Vector& m6) {
    if (m6.size() != 6) throw DimensionError("apply_uncertain: expected six parameters");
    VehicleParams vp = nominal;
    vp.C_af = m6[kVehicleCaf];
    vp.C_ar = m6[kVehicleCar];
    vp.k_phi = m6[kVehicleKphi];
    vp.c_phi = m6[kVehicleCphi];
    vp.phi_r = m6[kVehiclePhiR];
    vp.theta_r = m6[kVehicleThetaR];
    return vp;
}

ParameterizedSystem make_uncertain_vehicle(const VehicleParams& nominal, SignConvention signs) {
    nominal.validate();
    ParameterizedSystem ps{vehicle_parameter_box(), 4, 1, nullptr};
    VehicleParams base = nominal;
    ps.eval = [base, signs](const Vector& m6) {
        return build_vehicle_system(apply_uncertain(base, m6), signs);
    };
    return ps;
}

}  // namespace mmas
