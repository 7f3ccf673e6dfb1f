#include "mmas/systems.hpp"

namespace mmas {

std::vector<std::string> named_system_names() {
    return {"vehicle", "diag2", "rot2", "parabola", "constant", "coord"};
}

NamedSystem make_named_system(const std::string& name, SignConvention signs,
                              double vehicle_speed_mps) {
    if (name == "vehicle") {
        VehicleParams vp;
        vp.u = vehicle_speed_mps;
        return {name, "coupled lateral-roll vehicle over the six-parameter box",
                make_uncertain_vehicle(vp, signs)};
    }
    if (name == "diag2") {
        ParameterBox box({"m1", "m2"}, (Vector(2) << 0.0, 2.0).finished(),
                         (Vector(2) << 1.0, 3.0).finished());
        ParameterizedSystem ps{box, 2, 1, nullptr};
        ps.eval = [](const Vector& m) {
            Matrix A = Matrix::Zero(2, 2);
            A(0, 0) = m[0];
            A(1, 1) = m[1];
            Matrix B(2, 1);
            B << 1.0, 1.0;
            return LinearSystem{A, B};
        };
        return {name, "diagonal entries, one shared extremal template", ps};
    }
    if (name == "rot2") {
        ParameterBox box({"m1", "m2"}, (Vector(2) << -1.0, 0.5).finished(),
                         (Vector(2) << 1.0, 1.5).finished());
        ParameterizedSystem ps{box, 2, 1, nullptr};
        ps.eval = [](const Vector& m) {
            Matrix A(2, 2);
            A << m[0], m[1], -m[1], m[0];
            Matrix B(2, 1);
            B << 0.0, 1.0;
            return LinearSystem{A, B};
        };
        return {name, "rotation-like pair with opposing directions across entries", ps};
    }
    if (name == "parabola") {
        ParameterBox box({"m1"}, (Vector(1) << -1.0).finished(), (Vector(1) << 1.0).finished());
        ParameterizedSystem ps{box, 1, 1, nullptr};
        ps.eval = [](const Vector& m) {
            Matrix A(1, 1);
            A << m[0] * m[0];
            Matrix B(1, 1);
            B << 1.0;
            return LinearSystem{A, B};
        };
        return {name, "single parabolic entry, non-monotone on [-1, 1]", ps};
    }
    if (name == "constant") {
        ParameterBox box({"m1", "m2"}, (Vector(2) << 0.0, 0.0).finished(),
                         (Vector(2) << 1.0, 1.0).finished());
        ParameterizedSystem ps{box, 2, 1, nullptr};
        ps.eval = [](const Vector&) {
            Matrix A(2, 2);
            A << 0.0, 1.0, -2.0, -3.0;
            Matrix B(2, 1);
            B << 0.0, 1.0;
            return LinearSystem{A, B};
        };
        return {name, "parameter-independent stable pair", ps};
    }
    if (name == "coord") {
        ParameterBox box({"m1"}, (Vector(1) << -1.0).finished(), (Vector(1) << 1.0).finished());
        ParameterizedSystem ps{box, 2, 1, nullptr};
        ps.eval = [](const Vector& m) {
            const double x = m[0];
            Matrix A(2, 2);
            A << x, 3.0 * x + 1.0, x * x * x, x * x;
            Matrix B(2, 1);
            B << 0.0, 1.0;
            return LinearSystem{A, B};
        };
        return {name, "curve pairs exercising the coordination conditions", ps};
    }
    throw ConfigError("unknown system '" + name + "'");
}

}  // namespace mmas
