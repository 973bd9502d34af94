#include "ci/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace ci {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw config_error("config parse error at line " + std::to_string(line) + ": '" + v +
                           "' is not a number for key " + key);
    }
}

int parse_int(const std::string& v, const std::string& key, int line) {
    const double x = parse_double(v, key, line);
    if (x != std::floor(x))
        throw config_error("config parse error at line " + std::to_string(line) + ": key " +
                           key + " expects an integer");
    return (int)x;
}

bool parse_bool(const std::string& v, const std::string& key, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw config_error("config parse error at line " + std::to_string(line) + ": key " + key +
                       " expects true/false");
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "physical.k", "physical.mass", "physical.omega0", "physical.omega0_t",
        "physical.delta0_diff", "physical.delta0_common", "physical.vx", "physical.L",
        "physical.hbar",
        "beam.kind", "beam.n_slices", "beam.window_half_width_in_l", "beam.scan_length_l",
        "beam.delta_l_frac", "beam.delta_tau_frac", "beam.phase_target", "beam.slices_per_zone",
        "rotation.omega_rot", "rotation.axis_x",
        "scan.n_phi", "scan.s0", "scan.phi",
        "packet.n_momentum", "packet.span_hbar_k",
        "sweep.min_frac", "sweep.max_frac", "sweep.count",
        "analytic.delta_phi0", "analytic.count",
        "oracle.ratios",
        "sim.force_delta_zero", "sim.record_every",
        "output.directory", "output.emit_svg",
    };
    return keys;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string nearest_key(const std::string& key) {
    std::string best;
    std::size_t best_d = (std::size_t)-1;
    for (const auto& k : known_keys()) {
        // match against the full key and its bare name (section typos are common)
        std::size_t d = edit_distance(key, k);
        const auto dot = k.find('.');
        if (dot != std::string::npos)
            d = std::min(d, edit_distance(key, k.substr(dot + 1)) + 1);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

void set_key(RunConfig& c, const std::string& key, const std::string& v, int line) {
    auto bad_enum = [&](const char* what) {
        return config_error("config parse error at line " + std::to_string(line) + ": key " +
                            key + " expects " + what);
    };
    if (key == "physical.k") c.k = parse_double(v, key, line);
    else if (key == "physical.mass") c.mass = parse_double(v, key, line);
    else if (key == "physical.omega0") c.omega0 = parse_double(v, key, line);
    else if (key == "physical.omega0_t") c.omega0_t = parse_double(v, key, line);
    else if (key == "physical.delta0_diff") {
        if (v == "recoil") c.delta0_diff.reset();
        else c.delta0_diff = parse_double(v, key, line);
    }
    else if (key == "physical.delta0_common") c.delta0_common = parse_double(v, key, line);
    else if (key == "physical.vx") c.vx = parse_double(v, key, line);
    else if (key == "physical.L") c.beam_half_length = parse_double(v, key, line);
    else if (key == "physical.hbar") c.hbar = parse_double(v, key, line);
    else if (key == "beam.kind") {
        if (v == "gaussian") c.beam_kind = BeamKind::gaussian;
        else if (v == "bci") c.beam_kind = BeamKind::bci;
        else throw bad_enum("gaussian|bci");
    }
    else if (key == "beam.n_slices") c.n_slices = parse_int(v, key, line);
    else if (key == "beam.window_half_width_in_l")
        c.window_half_width_in_l = parse_double(v, key, line);
    else if (key == "beam.scan_length_l") {
        if (v == "auto") c.scan_length_l.reset();
        else c.scan_length_l = parse_double(v, key, line);
    }
    else if (key == "beam.delta_l_frac") c.delta_l_frac = parse_double(v, key, line);
    else if (key == "beam.delta_tau_frac") c.delta_tau_frac = parse_double(v, key, line);
    else if (key == "beam.phase_target") {
        if (v == "last_zone") c.phase_target = PhaseTarget::last_zone;
        else if (v == "from_delta_tau") c.phase_target = PhaseTarget::from_delta_tau;
        else throw bad_enum("last_zone|from_delta_tau");
    }
    else if (key == "beam.slices_per_zone") c.slices_per_zone = parse_int(v, key, line);
    else if (key == "rotation.omega_rot") c.omega_rot = parse_double(v, key, line);
    else if (key == "rotation.axis_x") {
        if (v == "auto") c.axis_x.reset();
        else c.axis_x = parse_double(v, key, line);
    }
    else if (key == "scan.n_phi") c.n_phi = parse_int(v, key, line);
    else if (key == "scan.s0") c.s0 = parse_double(v, key, line);
    else if (key == "scan.phi") c.phi = parse_double(v, key, line);
    else if (key == "packet.n_momentum") c.n_momentum = parse_int(v, key, line);
    else if (key == "packet.span_hbar_k") c.span_hbar_k = parse_double(v, key, line);
    else if (key == "sweep.min_frac") c.sweep_min = parse_double(v, key, line);
    else if (key == "sweep.max_frac") c.sweep_max = parse_double(v, key, line);
    else if (key == "sweep.count") c.sweep_count = parse_int(v, key, line);
    else if (key == "analytic.delta_phi0") c.analytic_delta_phi0 = parse_double(v, key, line);
    else if (key == "analytic.count") c.analytic_count = parse_int(v, key, line);
    else if (key == "oracle.ratios") {
        c.oracle_ratios.clear();
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) c.oracle_ratios.push_back(parse_double(item, key, line));
        }
        if (c.oracle_ratios.empty())
            throw config_error("config parse error at line " + std::to_string(line) +
                               ": oracle.ratios expects a comma-separated list");
    }
    else if (key == "sim.force_delta_zero") c.force_delta_zero = parse_bool(v, key, line);
    else if (key == "sim.record_every") c.record_every = parse_int(v, key, line);
    else if (key == "output.directory") c.out_directory = v;
    else if (key == "output.emit_svg") c.emit_svg = parse_bool(v, key, line);
    else
        throw config_error("config parse error at line " + std::to_string(line) +
                           ": unknown key '" + key + "' (did you mean '" + nearest_key(key) +
                           "'?)");
}

}  // namespace

PhysicalParams RunConfig::to_params() const {
    PhysicalParams p;
    p.k = k;
    p.m = mass;
    p.vx = vx;
    p.L = beam_half_length;
    p.hbar = hbar;
    p.delta0_common = delta0_common;
    p.omega0 = omega0 ? *omega0 : omega0_t * vx / beam_half_length;
    p.delta0_diff = delta0_diff ? *delta0_diff : 2.0 * hbar * k * k / mass;
    p.validate();
    return p;
}

CiBeamOptions RunConfig::to_beam_options() const {
    CiBeamOptions b;
    b.n_slices = n_slices;
    b.window_half_width_in_l = window_half_width_in_l;
    b.scan_length_l = scan_length_l ? *scan_length_l : 0.0;
    return b;
}

ScanOptions RunConfig::to_scan_options() const {
    ScanOptions s;
    s.n_phi = n_phi;
    s.n_momentum = n_momentum;
    s.momentum_span_hbar_k = span_hbar_k;
    s.force_delta_zero = force_delta_zero;
    s.digest = digest();
    return s;
}

RotationModel RunConfig::rotation_for(const PhysicalParams& par) const {
    RotationModel m = (beam_kind == BeamKind::gaussian)
                          ? ci_default_rotation(par, to_beam_options(), omega_rot)
                          : bci_default_rotation(omega_rot);
    if (axis_x) m.axis_x = *axis_x;
    return m;
}

void RunConfig::validate() const {
    if (omega0 && omega0_t != default_omega0_t)
        throw config_error("set either physical.omega0 or physical.omega0_t, not both");
    to_params();  // re-validates the physical invariants
    if (n_slices < 3) throw config_error("beam invariant violated: n_slices >= 3");
    if (window_half_width_in_l <= 0.0)
        throw config_error("beam invariant violated: window_half_width > 0");
    if (slices_per_zone < 1) throw config_error("beam invariant violated: slices_per_zone >= 1");
    if (n_phi < 16) throw config_error("scan invariant violated: n_phi >= 16");
    if (!(s0 > 0.0)) throw config_error("scan invariant violated: S0 > 0");
    if (n_momentum < 16) throw config_error("packet invariant violated: n_momentum >= 16");
    if (!(span_hbar_k > 0.0)) throw config_error("packet invariant violated: span_hbar_k > 0");
    if (sweep_count < 1) throw config_error("sweep invariant violated: count >= 1");
    if (record_every < 0) throw config_error("sim invariant violated: record_every >= 0");
    if (std::abs(delta_tau_frac) > 0.5)
        throw config_error("beam invariant violated: |delta_tau_frac| <= 1/2");
}

std::string RunConfig::canonical_dump() const {
    const PhysicalParams p = to_params();
    std::ostringstream os;
    os.precision(17);
    os << "physical.k = " << p.k << "\n"
       << "physical.mass = " << p.m << "\n"
       << "physical.omega0 = " << p.omega0 << "\n"
       << "physical.delta0_diff = " << p.delta0_diff << "\n"
       << "physical.delta0_common = " << p.delta0_common << "\n"
       << "physical.vx = " << p.vx << "\n"
       << "physical.L = " << p.L << "\n"
       << "physical.hbar = " << p.hbar << "\n"
       << "beam.kind = " << (beam_kind == BeamKind::gaussian ? "gaussian" : "bci") << "\n"
       << "beam.n_slices = " << n_slices << "\n"
       << "beam.window_half_width_in_l = " << window_half_width_in_l << "\n"
       << "beam.scan_length_l = " << to_beam_options().scan_length(p) << "\n"
       << "beam.delta_l_frac = " << delta_l_frac << "\n"
       << "beam.delta_tau_frac = " << delta_tau_frac << "\n"
       << "beam.phase_target = "
       << (phase_target == PhaseTarget::last_zone ? "last_zone" : "from_delta_tau") << "\n"
       << "beam.slices_per_zone = " << slices_per_zone << "\n"
       << "rotation.omega_rot = " << omega_rot << "\n"
       << "rotation.axis_x = " << rotation_for(p).axis_x << "\n"
       << "scan.n_phi = " << n_phi << "\n"
       << "scan.s0 = " << s0 << "\n"
       << "scan.phi = " << phi << "\n"
       << "packet.n_momentum = " << n_momentum << "\n"
       << "packet.span_hbar_k = " << span_hbar_k << "\n"
       << "sweep.min_frac = " << sweep_min << "\n"
       << "sweep.max_frac = " << sweep_max << "\n"
       << "sweep.count = " << sweep_count << "\n"
       << "analytic.delta_phi0 = " << analytic_delta_phi0 << "\n"
       << "analytic.count = " << analytic_count << "\n";
    os << "oracle.ratios = ";
    for (std::size_t i = 0; i < oracle_ratios.size(); ++i)
        os << (i ? "," : "") << oracle_ratios[i];
    os << "\n"
       << "sim.force_delta_zero = " << (force_delta_zero ? "true" : "false") << "\n"
       << "sim.record_every = " << record_every << "\n"
       << "output.directory = " << out_directory << "\n"
       << "output.emit_svg = " << (emit_svg ? "true" : "false") << "\n";
    return os.str();
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string RunConfig::digest() const {
    // hash the physics-relevant configuration only: the same setup written to a
    // different output directory must produce byte-identical tables
    std::istringstream in(canonical_dump());
    std::string line, kept;
    while (std::getline(in, line))
        if (line.rfind("output.", 0) != 0) kept += line + "\n";
    return fnv1a_hex(kept);
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error("config parse error at line " + std::to_string(line) +
                               ": expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config parse error at line " + std::to_string(line) +
                               ": expected 'key = value'");
        set_key(cfg, key, value, line);
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string defaults_text() {
    std::ostringstream os;
    os << "# cigyro configuration defaults (key = value, '#' comments)\n"
       << "physical.k = 8055600\n"
       << "physical.mass = 1.4431606e-25\n"
       << "physical.omega0_t = 3.3          # pins omega0 = omega0_t * vx / L\n"
       << "# physical.omega0 = 330000       # rad/s; exclusive with omega0_t\n"
       << "physical.delta0_diff = recoil    # 2 hbar k^2 / m, or a number in rad/s\n"
       << "physical.delta0_common = 1e9\n"
       << "physical.vx = 300\n"
       << "physical.L = 0.003\n"
       << "physical.hbar = 1.054571817e-34\n"
       << "beam.kind = gaussian             # gaussian|bci\n"
       << "beam.n_slices = 500\n"
       << "beam.window_half_width_in_l = 2.5\n"
       << "beam.scan_length_l = auto        # pi * vx / omega0, or meters\n"
       << "beam.delta_l_frac = 0.48\n"
       << "beam.delta_tau_frac = 0.5\n"
       << "beam.phase_target = from_delta_tau  # last_zone|from_delta_tau\n"
       << "beam.slices_per_zone = 16\n"
       << "rotation.omega_rot = 0.03\n"
       << "rotation.axis_x = auto           # atom entry (CI) / first zone (BCI), or meters\n"
       << "scan.n_phi = 64\n"
       << "scan.s0 = 1e6\n"
       << "scan.phi = 0\n"
       << "packet.n_momentum = 512\n"
       << "packet.span_hbar_k = 6\n"
       << "sweep.min_frac = -0.48\n"
       << "sweep.max_frac = 0.48\n"
       << "sweep.count = 25\n"
       << "analytic.delta_phi0 = 0.1\n"
       << "analytic.count = 201\n"
       << "oracle.ratios = 5,10,20,50,100\n"
       << "sim.force_delta_zero = false\n"
       << "sim.record_every = 5\n"
       << "output.directory = out\n"
       << "output.emit_svg = false\n";
    return os.str();
}

}  // namespace ci
