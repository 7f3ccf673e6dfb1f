#pragma once

#include "mmas/model.hpp"

namespace mmas {

// Sign handling for the cornering-stiffness force terms. AsPrinted follows the
// source formulas verbatim (positive force feedback, open-loop unstable);
// Standard flips every C_af/C_ar contribution to the usual bicycle-model
// convention. Gravity/roll terms are identical in both.
enum class SignConvention : unsigned char { AsPrinted, Standard };

// Coupled lateral-roll single-track parameters. Nominal values describe a
// D-class sedan; m_s, h_s, I_xs are engineering defaults (not table values)
// and may be overridden through the scenario config.
struct VehicleParams {
    double m = 1530.0;      // total mass, kg
    double m_s = 1370.0;    // sprung mass, kg
    double I_z = 2315.3;    // yaw inertia, kg m^2
    double I_xs = 500.0;    // sprung roll inertia, kg m^2
    double l_f = 1.11;      // CG to front axle, m
    double l_r = 1.67;      // CG to rear axle, m
    double h_s = 0.45;      // CG to roll center, m
    double C_af = 80400.0;  // front cornering stiffness, N/rad
    double C_ar = 82700.0;  // rear cornering stiffness, N/rad
    double k_phi = 36000.0; // roll stiffness, N m/rad
    double c_phi = 3000.0;  // roll damping, N m s/rad
    double phi_r = 0.0;     // road bank, rad
    double theta_r = 0.0;   // road grade, rad
    double u = 50.0 / 3.6;  // longitudinal speed, m/s
    double g = 9.81;

    double composite_roll_inertia() const { return I_xs - m_s * m_s * h_s * h_s / m; }
    void validate() const;  // throws NonPositiveIc / DimensionError
};

// State order [beta, r, phi, phi_dot], input delta (front steering), n = 4, h = 1.
// Row 3 is the kinematic pair phi_dot = x_4.
LinearSystem build_vehicle_system(const VehicleParams& vp,
                                  SignConvention signs = SignConvention::AsPrinted);

// Six uncertain parameters in this order (angles in radians):
//   C_af [56280, 104520], C_ar [57890, 107510], k_phi [25200, 46800],
//   c_phi [2100, 3900], phi_r [0, 4 deg], theta_r [0, 8 deg].
ParameterBox vehicle_parameter_box();

// Order of the uncertain parameters inside the box / schedules.
enum VehicleParamIndex : int {
    kVehicleCaf = 0,
    kVehicleCar = 1,
    kVehicleKphi = 2,
    kVehicleCphi = 3,
    kVehiclePhiR = 4,
    kVehicleThetaR = 5,
};

// Parameterized family over the box; fixed (non-uncertain) parameters come
// from the nominal argument.
ParameterizedSystem make_uncertain_vehicle(const VehicleParams& nominal,
                                           SignConvention signs = SignConvention::AsPrinted);

// Apply a draw of the six uncertain parameters onto a copy of the nominals.
VehicleParams apply_uncertain(const VehicleParams& nominal, const Vector& m6);

}  // namespace mmas
