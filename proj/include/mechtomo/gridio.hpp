// Copyright 2026 The mechtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MECHTOMO_GRIDIO_HPP
#define MECHTOMO_GRIDIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mechtomo/conditioning.hpp"
#include "mechtomo/tomography.hpp"

namespace mechtomo {

/// Round-trip decimal formatting (17 significant digits) used for every
/// numeric CSV field so re-runs compare byte-identical.
std::string format_g17(double v);

/// FNV-1a 64-bit; used for config hashes embedded in output files.
std::uint64_t fnv1a64(std::string_view data);
std::string hash_hex(std::uint64_t h);

// ---- density matrices ------------------------------------------------------

nlohmann::json density_matrix_to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const nlohmann::json& j);

// ---- probe / gaussian records ---------------------------------------------

nlohmann::json probe_to_json(const ProbeParams& p);
ProbeParams probe_from_json(const nlohmann::json& j);
nlohmann::json gaussian_state_to_json(const GaussianState& g);

// ---- grids -----------------------------------------------------------------

/// CSV columns (alpha_r, alpha_i, value), row-major over alpha_r then
/// alpha_i, preceded by "# key=value" comment lines carrying the grid spec
/// and any extra provenance entries.
void write_grid_csv(const std::filesystem::path& path, const QuasiProbGrid& g,
                    const std::vector<std::pair<std::string, std::string>>&
                        extra_header = {});
QuasiProbGrid read_grid_csv(const std::filesystem::path& path);

/// 16-bit binary PGM, linear min/max scaling; the scale goes in the sidecar.
void write_grid_pgm(const std::filesystem::path& path, const QuasiProbGrid& g,
                    const std::string& comment);

/// Sidecar record: s, extent, n, min/max, normalization residual, meta.
nlohmann::json grid_sidecar(const QuasiProbGrid& g);

// ---- marginals -------------------------------------------------------------

void write_marginal_csv(const std::filesystem::path& path, const Marginal& m,
                        const std::vector<std::pair<std::string, std::string>>&
                            extra_header = {});

// ---- tomogram datasets ------------------------------------------------------

/// One file: "# <json header>" line, then CSV (pulse_index, theta, P_L).
void write_dataset(const std::filesystem::path& path,
                   const TomogramDataset& ds,
                   const std::string& config_hash);
TomogramDataset read_dataset(const std::filesystem::path& path);

// ---- plumbing ---------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace mechtomo

#endif
