#include "spdc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace spdc {

namespace {

constexpr double kDefaultGroupVelocity = 9.26e7; // m/s, documented default

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

// Strict decimal float: [+-]? (digits [. digits?] | . digits) ([eE][+-]?digits)?
bool scan_float(std::string_view s, double& out) {
    size_t i = 0;
    const size_t n = s.size();
    if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
    size_t int_digits = 0;
    while (i < n && s[i] >= '0' && s[i] <= '9') { ++i; ++int_digits; }
    size_t frac_digits = 0;
    if (i < n && s[i] == '.') {
        ++i;
        while (i < n && s[i] >= '0' && s[i] <= '9') { ++i; ++frac_digits; }
    }
    if (int_digits + frac_digits == 0) return false;
    if (i < n && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
        size_t exp_digits = 0;
        while (i < n && s[i] >= '0' && s[i] <= '9') { ++i; ++exp_digits; }
        if (exp_digits == 0) return false;
    }
    if (i != n) return false;
    // normalize leading '.'/'-.': prepend zero for from_chars
    std::string tmp;
    std::string_view body = s;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        tmp.push_back(body[0]);
        body.remove_prefix(1);
    }
    if (!body.empty() && body[0] == '.') tmp.push_back('0');
    tmp.append(body);
    if (!tmp.empty() && tmp[0] == '+') tmp.erase(tmp.begin());
    const char* b = tmp.data();
    const char* e = b + tmp.size();
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc() && res.ptr == e;
}

struct Entry {
    std::string key;
    std::string raw_value;
    bool has_number = false;
    double number = 0.0;
    int line = 0;
    int column = 0;
    std::string line_text;
};

struct Section {
    std::string name;
    int line = 0;
    std::string line_text;
    std::vector<Entry> entries;
};

std::vector<Section> syntax_pass(std::string_view text) {
    std::vector<Section> sections;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        if (eol == std::string_view::npos && pos == text.size() && line.empty()) break;
        ++line_no;
        std::string original(line);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        // comments
        size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        // trim
        size_t b = line.find_first_not_of(" \t");
        if (b == std::string_view::npos) {
            if (eol == std::string_view::npos) break;
            pos = eol + 1;
            continue;
        }
        size_t e = line.find_last_not_of(" \t");
        std::string_view body = line.substr(b, e - b + 1);
        const int col0 = static_cast<int>(b) + 1;

        if (body.front() == '[') {
            size_t close = body.find(']');
            if (close == std::string_view::npos) {
                throw ConfigSyntaxError(line_no, col0, "unterminated section header: \"" +
                                                           original + "\"");
            }
            if (close + 1 != body.size()) {
                throw ConfigSyntaxError(line_no, col0 + static_cast<int>(close) + 1,
                                        "trailing characters after section header: \"" +
                                            original + "\"");
            }
            std::string_view name = body.substr(1, close - 1);
            if (name.empty() || !is_ident_start(name.front()) ||
                !std::all_of(name.begin(), name.end(), is_ident_char)) {
                throw ConfigSyntaxError(line_no, col0 + 1,
                                        "malformed section name: \"" + original + "\"");
            }
            Section s;
            s.name = std::string(name);
            s.line = line_no;
            s.line_text = original;
            sections.push_back(std::move(s));
        } else {
            if (sections.empty()) {
                throw ConfigSyntaxError(line_no, col0,
                                        "entry outside any section: \"" + original + "\"");
            }
            size_t eq = body.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigSyntaxError(line_no, col0,
                                        "expected 'key = value': \"" + original + "\"");
            }
            std::string_view key_part = body.substr(0, eq);
            size_t ke = key_part.find_last_not_of(" \t");
            if (ke == std::string_view::npos) {
                throw ConfigSyntaxError(line_no, col0, "missing key: \"" + original + "\"");
            }
            key_part = key_part.substr(0, ke + 1);
            if (!is_ident_start(key_part.front()) ||
                !std::all_of(key_part.begin(), key_part.end(), is_ident_char)) {
                throw ConfigSyntaxError(line_no, col0,
                                        "malformed key: \"" + original + "\"");
            }
            std::string_view val = body.substr(eq + 1);
            size_t vb = val.find_first_not_of(" \t");
            if (vb == std::string_view::npos) {
                throw ConfigSyntaxError(line_no, col0 + static_cast<int>(eq) + 1,
                                        "missing value: \"" + original + "\"");
            }
            val = val.substr(vb);
            Entry entry;
            entry.key = std::string(key_part);
            entry.raw_value = std::string(val);
            entry.has_number = scan_float(val, entry.number);
            entry.line = line_no;
            entry.column = col0 + static_cast<int>(eq) + 1 + static_cast<int>(vb);
            entry.line_text = original;
            // the grammar admits exactly one non-numeric value: a path token
            if (!entry.has_number && entry.key != "cavity_phase_file") {
                throw ConfigSyntaxError(entry.line, entry.column,
                                        "value of '" + entry.key +
                                            "' is not a decimal float: \"" + original + "\"");
            }
            sections.back().entries.push_back(std::move(entry));
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return sections;
}

// Per-section key table lookup rejecting duplicates and unknown keys.
class KeyBag {
public:
    KeyBag(const Section& section, std::vector<std::string> allowed)
        : section_(section), allowed_(std::move(allowed)) {
        for (const Entry& e : section.entries) {
            if (std::find(allowed_.begin(), allowed_.end(), e.key) == allowed_.end()) {
                throw ConfigSemanticError(
                    e.key, "unknown key in [" + section.name + "] at line " +
                               std::to_string(e.line) + ": \"" + e.line_text + "\"");
            }
            if (seen_.count(e.key)) {
                throw ConfigSemanticError(
                    e.key, "duplicate key in [" + section.name + "] at line " +
                               std::to_string(e.line) + ": \"" + e.line_text + "\"");
            }
            seen_.emplace(e.key, &e);
        }
    }

    bool has(const std::string& key) const { return seen_.count(key) != 0; }

    double number(const std::string& key) const {
        const Entry* e = seen_.at(key);
        if (!e->has_number) {
            throw ConfigSyntaxError(e->line, e->column,
                                    "value of '" + key + "' is not a decimal float: \"" +
                                        e->line_text + "\"");
        }
        return e->number;
    }

    double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    std::string raw(const std::string& key) const { return seen_.at(key)->raw_value; }

    void require(const std::string& key) const {
        if (!has(key)) {
            throw ConfigSemanticError(key, "missing required key in [" + section_.name + "]");
        }
    }

private:
    const Section& section_;
    std::vector<std::string> allowed_;
    std::map<std::string, const Entry*> seen_;
};

int as_point_count(double v, const std::string& key) {
    if (!(v >= 16.0) || v != std::floor(v) || v > 1e7) {
        throw ConfigSemanticError(key, "point count must be an even integer >= 16");
    }
    const int n = static_cast<int>(v);
    if (n % 2 != 0) {
        throw ConfigSemanticError(key, "point count must be even");
    }
    return n;
}

} // namespace

void GridSpec::validate() const {
    if (!(omega_minus_halfspan > 0.0) || !(tau_halfspan > 0.0) || !(big_omega_halfspan > 0.0)) {
        throw ConfigSemanticError("grid", "axis halfspans must be > 0");
    }
    for (const auto& [n, key] :
         {std::pair{omega_minus_points, "omega_minus_points"},
          std::pair{tau_points, "tau_points"}, std::pair{big_omega_points, "big_omega_points"}}) {
        if (n < 16 || n % 2 != 0) {
            throw ConfigSemanticError(key, "point count must be an even integer >= 16");
        }
    }
}

double Scenario::min_delta_omega() const {
    double best = 0.0;
    for (size_t i = 0; i < beams.size(); ++i) {
        const double theta = device.theta_deg + beams[i].tilt_delta_theta;
        const double dw = 2.0 * device.group_velocity * std::cos(theta) / beams[i].waist_wp;
        if (i == 0 || dw < best) best = dw;
    }
    return best;
}

double Scenario::detuning_spread() const {
    double spread = 0.0;
    for (const BeamSpec& b : beams) {
        spread = std::max(spread, std::abs(angle_to_detuning_exact(b.tilt_delta_theta, device)));
    }
    return spread;
}

double Scenario::delay_spread() const {
    double spread = 0.0;
    for (const BeamSpec& b : beams) {
        spread = std::max(spread, std::abs(position_to_delay(b.position_z0, device)));
    }
    return spread;
}

Scenario parse_scenario(std::string_view text) {
    const std::vector<Section> sections = syntax_pass(text);

    const Section* device_sec = nullptr;
    const Section* pulse_sec = nullptr;
    const Section* grid_sec = nullptr;
    std::vector<const Section*> beam_secs;
    for (const Section& s : sections) {
        if (s.name == "device") {
            if (device_sec) {
                throw ConfigSemanticError("device", "duplicate [device] section at line " +
                                                        std::to_string(s.line));
            }
            device_sec = &s;
        } else if (s.name == "pulse") {
            if (pulse_sec) {
                throw ConfigSemanticError("pulse", "duplicate [pulse] section at line " +
                                                       std::to_string(s.line));
            }
            pulse_sec = &s;
        } else if (s.name == "grid") {
            if (grid_sec) {
                throw ConfigSemanticError("grid", "duplicate [grid] section at line " +
                                                      std::to_string(s.line));
            }
            grid_sec = &s;
        } else if (s.name == "beam") {
            beam_secs.push_back(&s);
        } else {
            throw ConfigSemanticError(s.name, "unknown section at line " + std::to_string(s.line) +
                                                  ": \"" + s.line_text + "\"");
        }
    }
    if (!device_sec) throw ConfigSemanticError("device", "missing [device] section");
    if (!pulse_sec) throw ConfigSemanticError("pulse", "missing [pulse] section");
    if (beam_secs.empty()) throw ConfigSemanticError("beam", "at least one [beam] is required");

    Scenario sc;
    ConfigEcho& echo = sc.echo;

    // --- pulse (needed first: the pump carrier feeds DeviceParams) ---
    {
        KeyBag bag(*pulse_sec, {"wavelength_nm", "duration_ps", "cavity_phase_file"});
        bag.require("wavelength_nm");
        bag.require("duration_ps");
        echo.wavelength_nm = bag.number("wavelength_nm");
        echo.duration_ps = bag.number("duration_ps");
        if (bag.has("cavity_phase_file")) {
            echo.cavity_phase_file = bag.raw("cavity_phase_file");
            if (echo.cavity_phase_file.find_first_of(" \t") != std::string::npos) {
                throw ConfigSemanticError("cavity_phase_file", "path must not contain spaces");
            }
        }
        sc.pulse.center_wavelength = echo.wavelength_nm * 1e-9;
        sc.pulse.duration_tau_p = echo.duration_ps * 1e-12;
        sc.pulse.cavity_phase_file = echo.cavity_phase_file;
        sc.pulse.validate();
    }

    // --- device ---
    {
        KeyBag bag(*device_sec,
                   {"length_mm", "vg_m_per_s", "theta_deg_arcmin", "n_signal", "n_idler"});
        bag.require("length_mm");
        echo.length_mm = bag.number("length_mm");
        echo.vg_m_per_s = bag.number_or("vg_m_per_s", kDefaultGroupVelocity);
        sc.device.length = echo.length_mm * 1e-3;
        sc.device.group_velocity = echo.vg_m_per_s;
        sc.device.pump_center_omega = sc.pulse.center_omega();
        const bool has_theta = bag.has("theta_deg_arcmin");
        const bool has_ns = bag.has("n_signal");
        const bool has_ni = bag.has("n_idler");
        if (has_ns != has_ni) {
            throw ConfigSemanticError(has_ns ? "n_idler" : "n_signal",
                                      "n_signal and n_idler must be given together");
        }
        if (has_theta) {
            echo.theta_deg_arcmin = bag.number("theta_deg_arcmin");
            sc.device.theta_deg = arcmin_to_rad(*echo.theta_deg_arcmin);
        }
        if (has_ns) {
            echo.n_signal = bag.number("n_signal");
            echo.n_idler = bag.number("n_idler");
            sc.device.index_signal = echo.n_signal;
            sc.device.index_idler = echo.n_idler;
            const double half_diff = (*echo.n_signal - *echo.n_idler) / 2.0;
            if (std::abs(half_diff) > 1.0) {
                throw ConfigSemanticError("n_signal", "|n_signal - n_idler|/2 must be <= 1");
            }
            if (!has_theta) sc.device.theta_deg = std::asin(half_diff);
        }
        sc.device.validate();
    }

    // --- beams ---
    for (const Section* bs : beam_secs) {
        KeyBag bag(*bs, {"position_mm", "tilt_arcmin", "waist_um", "amplitude", "phase_rad"});
        bag.require("waist_um");
        ConfigEcho::BeamEcho be;
        be.position_mm = bag.number_or("position_mm", 0.0);
        be.tilt_arcmin = bag.number_or("tilt_arcmin", 0.0);
        be.waist_um = bag.number("waist_um");
        be.amplitude = bag.number_or("amplitude", 1.0);
        be.phase_rad = bag.number_or("phase_rad", 0.0);
        echo.beams.push_back(be);
        BeamSpec beam;
        beam.position_z0 = be.position_mm * 1e-3;
        beam.tilt_delta_theta = arcmin_to_rad(be.tilt_arcmin);
        beam.waist_wp = be.waist_um * 1e-6;
        beam.amplitude = be.amplitude;
        beam.phase_rad = be.phase_rad;
        beam.validate();
        sc.beams.push_back(beam);
    }

    // --- grid (explicit values or derived defaults) ---
    {
        const double dmin = sc.min_delta_omega();
        const double spread_w = sc.detuning_spread();
        const double spread_t = sc.delay_spread();
        double om_half = 8.0 * dmin + 2.0 * spread_w;
        double om_pts = 1024.0;
        double tau_half_ps = (spread_t + 6.0 / dmin) / 1e-12;
        double tau_pts = 256.0;
        double big_half = spread_w + 3.5 * dmin;
        double big_pts = 256.0;
        if (grid_sec) {
            KeyBag bag(*grid_sec,
                       {"omega_minus_halfspan_rad_s", "omega_minus_points", "tau_halfspan_ps",
                        "tau_points", "big_omega_halfspan_rad_s", "big_omega_points"});
            om_half = bag.number_or("omega_minus_halfspan_rad_s", om_half);
            om_pts = bag.number_or("omega_minus_points", om_pts);
            tau_half_ps = bag.number_or("tau_halfspan_ps", tau_half_ps);
            tau_pts = bag.number_or("tau_points", tau_pts);
            big_half = bag.number_or("big_omega_halfspan_rad_s", big_half);
            big_pts = bag.number_or("big_omega_points", big_pts);
        }
        echo.omega_minus_halfspan_rad_s = om_half;
        echo.omega_minus_points = om_pts;
        echo.tau_halfspan_ps = tau_half_ps;
        echo.tau_points = tau_pts;
        echo.big_omega_halfspan_rad_s = big_half;
        echo.big_omega_points = big_pts;
        sc.grid.omega_minus_halfspan = om_half;
        sc.grid.omega_minus_points = as_point_count(om_pts, "omega_minus_points");
        sc.grid.tau_halfspan = tau_half_ps * 1e-12;
        sc.grid.tau_points = as_point_count(tau_pts, "tau_points");
        sc.grid.big_omega_halfspan = big_half;
        sc.grid.big_omega_points = as_point_count(big_pts, "big_omega_points");
        sc.grid.validate();
    }

    return sc;
}

ConfigEcho make_echo(const Scenario& sc) {
    ConfigEcho echo;
    echo.length_mm = sc.device.length / 1e-3;
    echo.vg_m_per_s = sc.device.group_velocity;
    if (sc.device.index_signal && sc.device.index_idler) {
        echo.n_signal = sc.device.index_signal;
        echo.n_idler = sc.device.index_idler;
    } else {
        echo.theta_deg_arcmin = sc.device.theta_deg / arcmin_to_rad(1.0);
    }
    echo.wavelength_nm = sc.pulse.center_wavelength / 1e-9;
    echo.duration_ps = sc.pulse.duration_tau_p / 1e-12;
    echo.cavity_phase_file = sc.pulse.cavity_phase_file;
    for (const BeamSpec& b : sc.beams) {
        ConfigEcho::BeamEcho be;
        be.position_mm = b.position_z0 / 1e-3;
        be.tilt_arcmin = b.tilt_delta_theta / arcmin_to_rad(1.0);
        be.waist_um = b.waist_wp / 1e-6;
        be.amplitude = b.amplitude;
        be.phase_rad = b.phase_rad;
        echo.beams.push_back(be);
    }
    echo.omega_minus_halfspan_rad_s = sc.grid.omega_minus_halfspan;
    echo.omega_minus_points = sc.grid.omega_minus_points;
    echo.tau_halfspan_ps = sc.grid.tau_halfspan / 1e-12;
    echo.tau_points = sc.grid.tau_points;
    echo.big_omega_halfspan_rad_s = sc.grid.big_omega_halfspan;
    echo.big_omega_points = sc.grid.big_omega_points;
    return echo;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string serialize_scenario(const Scenario& sc) {
    const ConfigEcho& e = sc.echo;
    std::string out;
    auto kv = [&out](const std::string& k, double v) {
        out += k;
        out += " = ";
        out += format_double(v);
        out += '\n';
    };
    out += "[device]\n";
    kv("length_mm", e.length_mm);
    kv("vg_m_per_s", e.vg_m_per_s);
    if (e.theta_deg_arcmin) kv("theta_deg_arcmin", *e.theta_deg_arcmin);
    if (e.n_signal) kv("n_signal", *e.n_signal);
    if (e.n_idler) kv("n_idler", *e.n_idler);
    out += "\n[pulse]\n";
    kv("wavelength_nm", e.wavelength_nm);
    kv("duration_ps", e.duration_ps);
    if (!e.cavity_phase_file.empty()) {
        out += "cavity_phase_file = " + e.cavity_phase_file + "\n";
    }
    for (const auto& b : e.beams) {
        out += "\n[beam]\n";
        kv("position_mm", b.position_mm);
        kv("tilt_arcmin", b.tilt_arcmin);
        kv("waist_um", b.waist_um);
        kv("amplitude", b.amplitude);
        kv("phase_rad", b.phase_rad);
    }
    out += "\n[grid]\n";
    kv("omega_minus_halfspan_rad_s", e.omega_minus_halfspan_rad_s);
    kv("omega_minus_points", e.omega_minus_points);
    kv("tau_halfspan_ps", e.tau_halfspan_ps);
    kv("tau_points", e.tau_points);
    kv("big_omega_halfspan_rad_s", e.big_omega_halfspan_rad_s);
    kv("big_omega_points", e.big_omega_points);
    return out;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    Scenario sc = parse_scenario(buf.str());
    if (!sc.pulse.cavity_phase_file.empty()) {
        std::filesystem::path table_path(sc.pulse.cavity_phase_file);
        if (table_path.is_relative()) table_path = file.parent_path() / table_path;
        sc.pulse.cavity_phase = load_phase_table(table_path);
    }
    return sc;
}

void write_text_atomic(const std::filesystem::path& dest, const std::string& content) {
    std::filesystem::path tmp = dest;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, dest, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("rename failed for: " + dest.string());
    }
}

namespace {

void append_axis_header(std::string& out, const std::string& tag, const std::string& name,
                        const Axis& axis) {
    out += "# " + tag + "=" + name + " min=" + format_double(axis.min()) +
           " max=" + format_double(axis.max()) + " n=" + std::to_string(axis.n) + "\n";
}

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw RejectedValue(std::string("non-finite ") + what + " is never serialized");
    }
}

struct HeaderAxis {
    std::string name;
    Axis axis;
};

HeaderAxis parse_axis_header(const std::string& line, const std::string& tag,
                             const std::string& file) {
    // format: "# axis1=<name> min=<v> max=<v> n=<int>"
    std::istringstream ss(line);
    std::string hash, eq_name, min_s, max_s, n_s;
    ss >> hash >> eq_name >> min_s >> max_s >> n_s;
    auto value_of = [&](const std::string& token, const std::string& prefix) {
        if (token.rfind(prefix, 0) != 0) {
            throw IoError("malformed header in " + file + ": \"" + line + "\"");
        }
        return token.substr(prefix.size());
    };
    HeaderAxis h;
    h.name = value_of(eq_name, tag + "=");
    double mn = 0, mx = 0;
    if (!scan_float(value_of(min_s, "min="), mn) || !scan_float(value_of(max_s, "max="), mx)) {
        throw IoError("malformed axis bounds in " + file);
    }
    double nd = 0;
    if (!scan_float(value_of(n_s, "n="), nd) || nd < 2 || nd != std::floor(nd)) {
        throw IoError("malformed axis count in " + file);
    }
    h.axis = Axis::inclusive(mn, mx, static_cast<int>(nd));
    return h;
}

std::vector<std::string> read_lines(const std::filesystem::path& src) {
    std::ifstream in(src, std::ios::binary);
    if (!in) throw IoError("cannot open: " + src.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::vector<double> split_floats(const std::string& line, size_t expected,
                                 const std::string& file) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= line.size()) {
        size_t comma = line.find(',', pos);
        std::string_view tok(line.data() + pos,
                             (comma == std::string::npos ? line.size() : comma) - pos);
        double v = 0;
        if (!scan_float(tok, v)) throw IoError("malformed data row in " + file + ": " + line);
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != expected) {
        throw IoError("wrong column count in " + file + ": " + line);
    }
    return out;
}

} // namespace

void write_real_grid(const RealGrid2D& grid, const std::filesystem::path& dest,
                     const std::string& axis1_name, const std::string& axis2_name) {
    for (double v : grid.values) check_finite(v, "grid value");
    std::string out;
    out.reserve(grid.values.size() * 24 + 256);
    append_axis_header(out, "axis1", axis1_name, grid.tau_axis);
    append_axis_header(out, "axis2", axis2_name, grid.omega_axis);
    out += axis1_name + "," + axis2_name + ",value\n";
    for (int it = 0; it < grid.tau_axis.n; ++it) {
        const std::string t = format_double(grid.tau_axis.value(it));
        for (int iw = 0; iw < grid.omega_axis.n; ++iw) {
            out += t;
            out += ',';
            out += format_double(grid.omega_axis.value(iw));
            out += ',';
            out += format_double(grid.at(it, iw));
            out += '\n';
        }
    }
    write_text_atomic(dest, out);
}

RealGrid2D read_real_grid(const std::filesystem::path& src) {
    const auto lines = read_lines(src);
    if (lines.size() < 4) throw IoError("truncated grid file: " + src.string());
    const HeaderAxis a1 = parse_axis_header(lines[0], "axis1", src.string());
    const HeaderAxis a2 = parse_axis_header(lines[1], "axis2", src.string());
    RealGrid2D grid;
    grid.tau_axis = a1.axis;
    grid.omega_axis = a2.axis;
    const size_t expected = static_cast<size_t>(a1.axis.n) * static_cast<size_t>(a2.axis.n);
    if (lines.size() != expected + 3) {
        throw IoError("row count mismatch in " + src.string());
    }
    grid.values.reserve(expected);
    for (size_t i = 3; i < lines.size(); ++i) {
        grid.values.push_back(split_floats(lines[i], 3, src.string())[2]);
    }
    return grid;
}

void write_complex_function(const SampledComplexFunction& f, const std::filesystem::path& dest,
                            const std::string& axis_name) {
    for (const cd& v : f.values) {
        check_finite(v.real(), "value");
        check_finite(v.imag(), "value");
    }
    std::string out;
    out.reserve(f.values.size() * 40 + 128);
    append_axis_header(out, "axis", axis_name, f.axis);
    out += axis_name + ",re,im\n";
    for (int i = 0; i < f.axis.n; ++i) {
        out += format_double(f.axis.value(i));
        out += ',';
        out += format_double(f.values[static_cast<size_t>(i)].real());
        out += ',';
        out += format_double(f.values[static_cast<size_t>(i)].imag());
        out += '\n';
    }
    write_text_atomic(dest, out);
}

SampledComplexFunction read_complex_function(const std::filesystem::path& src) {
    const auto lines = read_lines(src);
    if (lines.size() < 3) throw IoError("truncated file: " + src.string());
    const HeaderAxis a = parse_axis_header(lines[0], "axis", src.string());
    SampledComplexFunction f;
    f.axis = a.axis;
    if (lines.size() != static_cast<size_t>(a.axis.n) + 2) {
        throw IoError("row count mismatch in " + src.string());
    }
    for (size_t i = 2; i < lines.size(); ++i) {
        const auto row = split_floats(lines[i], 3, src.string());
        f.values.emplace_back(row[1], row[2]);
    }
    return f;
}

void write_complex_grid(const Axis& axis1, const Axis& axis2, const std::vector<cd>& values,
                        const std::filesystem::path& dest, const std::string& axis1_name,
                        const std::string& axis2_name) {
    for (const cd& v : values) {
        check_finite(v.real(), "value");
        check_finite(v.imag(), "value");
    }
    std::string out;
    out.reserve(values.size() * 48 + 256);
    append_axis_header(out, "axis1", axis1_name, axis1);
    append_axis_header(out, "axis2", axis2_name, axis2);
    out += axis1_name + "," + axis2_name + ",re,im\n";
    for (int i = 0; i < axis1.n; ++i) {
        const std::string s1 = format_double(axis1.value(i));
        for (int j = 0; j < axis2.n; ++j) {
            const cd v = values[static_cast<size_t>(i) * axis2.n + j];
            out += s1;
            out += ',';
            out += format_double(axis2.value(j));
            out += ',';
            out += format_double(v.real());
            out += ',';
            out += format_double(v.imag());
            out += '\n';
        }
    }
    write_text_atomic(dest, out);
}

PhaseTable load_phase_table(const std::filesystem::path& src) {
    const auto lines = read_lines(src);
    PhaseTable table;
    bool first = true;
    for (const std::string& line : lines) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            double probe = 0.0;
            const size_t comma = line.find(',');
            if (comma == std::string::npos ||
                !scan_float(std::string_view(line).substr(0, comma), probe)) {
                continue; // header row
            }
        }
        const auto row = split_floats(line, 2, src.string());
        if (!table.omega.empty() && row[0] <= table.omega.back()) {
            throw IoError("cavity phase table " + src.string() +
                          ": first column must be strictly increasing");
        }
        table.omega.push_back(row[0]);
        table.phase.push_back(row[1]);
    }
    if (table.omega.size() < 2) {
        throw IoError("cavity phase table " + src.string() + ": need at least two rows");
    }
    return table;
}

} // namespace spdc
