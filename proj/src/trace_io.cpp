#include "mmas/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "mmas/errors.hpp"

namespace mmas {

std::string trace_csv_header(int N) {
    std::string h = "t,beta,r,phi,phidot,beta_hat,r_hat,phi_hat,phidot_hat";
    for (int i = 1; i <= N; ++i) h += ",w_" + std::to_string(i);
    h += ",inclusion";
    return h;
}

namespace {

void append_value(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    line += buf;
}

}  // namespace

void write_trace_csv(std::ostream& out, const SimulationTrace& trace) {
    out << trace_csv_header(trace.N) << '\n';
    const int rows = static_cast<int>(trace.plant_states.rows());
    for (int s = 0; s < rows; ++s) {
        char head[40];
        std::snprintf(head, sizeof head, "%.17g", trace.t[static_cast<size_t>(s)]);
        std::string line = head;
        for (int j = 0; j < trace.n; ++j) append_value(line, trace.plant_states(s, j));
        for (int j = 0; j < trace.n; ++j) append_value(line, trace.estimates(s, j));
        for (int i = 0; i < trace.N; ++i) append_value(line, trace.weights(s, i));
        line += ',';
        line += to_string(trace.inclusion[static_cast<size_t>(s)]);
        out << line << '\n';
    }
}

void write_trace_csv_file(const std::string& path, const SimulationTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write trace file: " + path);
    write_trace_csv(out, trace);
}

}  // namespace mmas
