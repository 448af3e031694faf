#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef XCOM_FIXTURE_DIR
#error "XCOM_FIXTURE_DIR must point at the examples_xcom directory"
#endif

namespace fixtures {

inline std::string read(const std::string& name) {
  std::ifstream in(std::string(XCOM_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fixtures
