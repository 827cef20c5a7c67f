#pragma once

#include "baen/trainer.hpp"

#include <iosfwd>
#include <string>

namespace baen {

/// Plain-text model document. Every real number is written with 17
/// significant digits, so a reloaded model reproduces decision values
/// bit for bit.
void write_model(std::ostream& out, const Model& model);
Model read_model(std::istream& in);

void save_model(const std::string& path, const Model& model);
Model load_model(const std::string& path);

} // namespace baen
