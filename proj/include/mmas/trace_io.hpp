#pragma once

#include <iosfwd>
#include <string>

#include "mmas/simulate.hpp"

namespace mmas {

// Header: t,beta,r,phi,phidot,beta_hat,r_hat,phi_hat,phidot_hat,w_1..w_N,inclusion
std::string trace_csv_header(int N);

void write_trace_csv(std::ostream& out, const SimulationTrace& trace);
void write_trace_csv_file(const std::string& path, const SimulationTrace& trace);

}  // namespace mmas
