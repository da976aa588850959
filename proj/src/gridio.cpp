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

#include "mechtomo/gridio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mechtomo/errors.hpp"

namespace mechtomo {

using nlohmann::json;

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json density_matrix_to_json(const DensityMatrix& rho) {
    json elements = json::array();
    for (int i = 0; i < rho.dim(); ++i) {
        for (int j = 0; j < rho.dim(); ++j) {
            elements.push_back({rho.elements(i, j).real(),
                                rho.elements(i, j).imag()});
        }
    }
    return json{{"dim", rho.dim()},
                {"truncation_deficit", rho.truncation_deficit},
                {"elements", std::move(elements)}};
}

DensityMatrix density_matrix_from_json(const json& j) {
    DensityMatrix rho;
    int dim = j.at("dim").get<int>();
    if (dim <= 0) throw ArgumentError("invalid density matrix dim");
    const auto& elements = j.at("elements");
    if (static_cast<int>(elements.size()) != dim * dim) {
        throw ArgumentError("density matrix element count mismatch");
    }
    rho.elements.resize(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int k = 0; k < dim; ++k) {
            const auto& e = elements[i * dim + k];
            rho.elements(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    rho.truncation_deficit = j.at("truncation_deficit").get<double>();
    return rho;
}

json probe_to_json(const ProbeParams& p) {
    return json{{"chi", p.chi},
                {"omega", p.omega},
                {"sigma_x", p.sigma_x},
                {"sigma_p", p.sigma_p},
                {"xbar_l", p.xbar_l}};
}

ProbeParams probe_from_json(const json& j) {
    ProbeParams p;
    p.chi = j.at("chi").get<double>();
    p.omega = j.value("omega", 0.0);
    p.sigma_x = j.value("sigma_x", 0.0);
    p.sigma_p = j.value("sigma_p", 0.0);
    p.xbar_l = j.value("xbar_l", 0.0);
    p.validate();
    return p;
}

json gaussian_state_to_json(const GaussianState& g) {
    return json{{"mean", {g.mean(0), g.mean(1)}},
                {"cov", {{g.cov(0, 0), g.cov(0, 1)}, {g.cov(1, 0), g.cov(1, 1)}}},
                {"purity_occupation", g.purity_occupation()}};
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path.string());
    return f;
}

}  // namespace

void write_grid_csv(
    const std::filesystem::path& path, const QuasiProbGrid& g,
    const std::vector<std::pair<std::string, std::string>>& extra_header) {
    std::ofstream f = open_out(path);
    f << "# s=" << format_g17(g.s) << "\n";
    f << "# half_extent=" << format_g17(g.half_extent) << "\n";
    f << "# n=" << g.n << "\n";
    f << "# meta=" << to_string(g.meta) << "\n";
    for (const auto& [k, v] : extra_header) f << "# " << k << "=" << v << "\n";
    f << "alpha_r,alpha_i,value\n";
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            f << format_g17(g.axis(i)) << ',' << format_g17(g.axis(j)) << ','
              << format_g17(g.values(i, j)) << '\n';
        }
    }
    if (!f) throw IoError("write failed: " + path.string());
}

QuasiProbGrid read_grid_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open: " + path.string());
    QuasiProbGrid g;
    std::string line;
    bool have_spec = false;
    std::vector<double> values;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(2, eq - 2);
            std::string val = line.substr(eq + 1);
            if (key == "s") g.s = std::stod(val);
            else if (key == "half_extent") g.half_extent = std::stod(val);
            else if (key == "n") { g.n = std::stoi(val); have_spec = true; }
            else if (key == "meta") g.meta = provenance_from_string(val);
            continue;
        }
        if (line.rfind("alpha_r", 0) == 0) continue;
        std::stringstream ss(line);
        std::string tok;
        double cols[3];
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(ss, tok, ',')) throw IoError("bad CSV row in " + path.string());
            cols[c] = std::stod(tok);
        }
        values.push_back(cols[2]);
    }
    if (!have_spec || g.n <= 0 ||
        values.size() != static_cast<std::size_t>(g.n) * g.n) {
        throw IoError("grid CSV missing or inconsistent spec: " + path.string());
    }
    g.values.resize(g.n, g.n);
    std::size_t idx = 0;
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) g.values(i, j) = values[idx++];
    }
    return g;
}

void write_grid_pgm(const std::filesystem::path& path, const QuasiProbGrid& g,
                    const std::string& comment) {
    std::ofstream f = open_out(path);
    double lo = g.min_value();
    double hi = g.max_value();
    double span = hi - lo;
    f << "P5\n";
    if (!comment.empty()) f << "# " << comment << "\n";
    f << g.n << " " << g.n << "\n65535\n";
    // Row k of the image is alpha_i descending so the picture reads like a
    // phase-space plot; columns run over alpha_r.
    for (int row = 0; row < g.n; ++row) {
        int j = g.n - 1 - row;
        for (int i = 0; i < g.n; ++i) {
            double x = (span > 0) ? (g.values(i, j) - lo) / span : 0.0;
            auto v = static_cast<unsigned>(std::lround(x * 65535.0));
            f.put(static_cast<char>((v >> 8) & 0xff));
            f.put(static_cast<char>(v & 0xff));
        }
    }
    if (!f) throw IoError("write failed: " + path.string());
}

json grid_sidecar(const QuasiProbGrid& g) {
    return json{{"s", g.s},
                {"half_extent", g.half_extent},
                {"n", g.n},
                {"meta", to_string(g.meta)},
                {"min", g.min_value()},
                {"max", g.max_value()},
                {"normalization_residual", g.integral() - 1.0},
                {"pgm_scale", {{"lo", g.min_value()}, {"hi", g.max_value()}}}};
}

void write_marginal_csv(
    const std::filesystem::path& path, const Marginal& m,
    const std::vector<std::pair<std::string, std::string>>& extra_header) {
    std::ofstream f = open_out(path);
    f << "# theta=" << format_g17(m.theta) << "\n";
    for (const auto& [k, v] : extra_header) f << "# " << k << "=" << v << "\n";
    f << "x,density\n";
    for (std::size_t i = 0; i < m.xs.size(); ++i) {
        f << format_g17(m.xs[i]) << ',' << format_g17(m.density[i]) << '\n';
    }
    if (!f) throw IoError("write failed: " + path.string());
}

void write_dataset(const std::filesystem::path& path, const TomogramDataset& ds,
                   const std::string& config_hash) {
    std::ofstream f = open_out(path);
    json header{{"probe", probe_to_json(ds.probe)},
                {"seed", ds.seed},
                {"state_label", ds.state_label},
                {"angles", ds.angles},
                {"config_hash", config_hash}};
    f << "# " << header.dump() << "\n";
    f << "pulse_index,theta,P_L\n";
    for (std::size_t k = 0; k < ds.angles.size(); ++k) {
        const std::string theta = format_g17(ds.angles[k]);
        for (std::size_t i = 0; i < ds.samples[k].size(); ++i) {
            f << i << ',' << theta << ',' << format_g17(ds.samples[k][i]) << '\n';
        }
    }
    if (!f) throw IoError("write failed: " + path.string());
}

TomogramDataset read_dataset(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open: " + path.string());
    std::string line;
    if (!std::getline(f, line) || line.size() < 3 || line[0] != '#') {
        throw IoError("dataset missing JSON header: " + path.string());
    }
    json header = json::parse(line.substr(2));
    TomogramDataset ds;
    ds.probe = probe_from_json(header.at("probe"));
    ds.seed = header.at("seed").get<std::uint64_t>();
    ds.state_label = header.value("state_label", "");
    ds.angles = header.at("angles").get<std::vector<double>>();
    ds.samples.assign(ds.angles.size(), {});

    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("pulse_index", 0) == 0) {
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        if (!std::getline(ss, tok, ',')) continue;
        if (!std::getline(ss, tok, ',')) throw IoError("bad dataset row");
        double theta = std::stod(tok);
        if (!std::getline(ss, tok, ',')) throw IoError("bad dataset row");
        double pl = std::stod(tok);
        // Locate the angle block (angles are few; linear scan is fine).
        std::size_t k = 0;
        while (k < ds.angles.size() && std::abs(ds.angles[k] - theta) > 1e-12) ++k;
        if (k == ds.angles.size()) throw IoError("sample with unknown angle");
        ds.samples[k].push_back(pl);
    }
    ds.validate();
    return ds;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
    std::ofstream f = open_out(path);
    f << content;
    if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace mechtomo
