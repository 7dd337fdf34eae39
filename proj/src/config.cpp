#include "lesionseg/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "lesionseg/errors.hpp"

namespace lesionseg {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") {
        return true;
    }
    if (value == "false" || value == "0") {
        return false;
    }
    throw ParamError("config: '" + key + "' expects true/false, got '" + value + "'");
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("");
        }
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ParamError("config: '" + key + "' expects an integer, got '" + value + "'");
    }
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("");
        }
        return v;
    } catch (const std::exception&) {
        throw ParamError("config: '" + key + "' expects a non-negative integer, got '" +
                         value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("");
        }
        return v;
    } catch (const std::exception&) {
        throw ParamError("config: '" + key + "' expects a number, got '" + value + "'");
    }
}

std::vector<double> parse_vector(const std::string& key, const std::string& value,
                                 size_t expected) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(key, trim(item)));
    }
    if (out.size() != expected) {
        throw ParamError("config: '" + key + "' expects " + std::to_string(expected) +
                         " comma-separated values");
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int scale_round(int base, int long_side, int minimum) {
    const double scaled = base * static_cast<double>(long_side) / 512.0;
    return std::max(minimum, static_cast<int>(std::lround(scaled)));
}

}  // namespace

void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value) {
    if (key == "io.resize_max") {
        cfg.io_resize_max = parse_int(key, value);
    } else if (key == "intensity_mode") {
        if (value == "broadly_tuned") {
            cfg.intensity_mode = IntensityMode::BroadlyTuned;
        } else if (value == "raw_rgb") {
            cfg.intensity_mode = IntensityMode::RawRgb;
        } else {
            throw ParamError("config: intensity_mode must be broadly_tuned or raw_rgb");
        }
    } else if (key == "hair.enabled") {
        cfg.hair_enabled = parse_bool(key, value);
    } else if (key == "hair.se_length") {
        cfg.hair_se_length = parse_int(key, value);
    } else if (key == "hair.threshold") {
        cfg.hair_threshold = parse_double(key, value);
    } else if (key == "guided.radius") {
        cfg.guided_radius = parse_int(key, value);
    } else if (key == "guided.epsilon") {
        cfg.guided_epsilon = parse_double(key, value);
    } else if (key == "guided.subsample") {
        cfg.guided_subsample = parse_int(key, value);
    } else if (key == "spatial.theta_degrees") {
        cfg.spatial_theta_degrees = parse_double(key, value);
    } else if (key == "spatial.guided.radius") {
        cfg.spatial_guided_radius = parse_int(key, value);
    } else if (key == "spatial.guided.epsilon") {
        cfg.spatial_guided_epsilon = parse_double(key, value);
    } else if (key == "spatial.guided.subsample") {
        cfg.spatial_guided_subsample = parse_int(key, value);
    } else if (key == "lab.variance_denominator") {
        cfg.lab_variance_denominator = parse_bool(key, value);
    } else if (key == "coarse.patch_size") {
        cfg.coarse_patch_size = parse_int(key, value);
    } else if (key == "coarse.seed") {
        cfg.coarse_seed = parse_u64(key, value);
    } else if (key == "coarse.whitened") {
        cfg.coarse_whitened = parse_bool(key, value);
    } else if (key == "coarse.weight_mode") {
        if (value == "membership") {
            cfg.coarse_weight_mode = CoarseWeightMode::Membership;
        } else if (value == "uniform") {
            cfg.coarse_weight_mode = CoarseWeightMode::Uniform;
        } else {
            throw ParamError("config: coarse.weight_mode must be membership or uniform");
        }
    } else if (key == "freq.kernel_size") {
        cfg.freq_kernel_size = parse_int(key, value);
    } else if (key == "freq.f0") {
        cfg.freq_f0 = parse_double(key, value);
    } else if (key == "freq.sigma_ratio") {
        cfg.freq_sigma_ratio = parse_double(key, value);
    } else if (key == "freq.gaussian_sigma") {
        cfg.freq_gaussian_sigma = parse_double(key, value);
    } else if (key == "freq.w_opp") {
        const auto v = parse_vector(key, value, 3);
        std::copy(v.begin(), v.end(), cfg.freq_w_opp.begin());
    } else if (key == "freq.w_lab") {
        const auto v = parse_vector(key, value, 2);
        std::copy(v.begin(), v.end(), cfg.freq_w_lab.begin());
    } else if (key == "fusion.chart_mode") {
        cfg.fusion_chart_mode = parse_bool(key, value);
    } else if (key == "fusion.entropy_bins") {
        cfg.fusion_entropy_bins = parse_int(key, value);
    } else if (key == "post.se_radius") {
        cfg.post_se_radius = parse_int(key, value);
    } else if (key == "post.keep_largest") {
        cfg.post_keep_largest = parse_bool(key, value);
    } else {
        throw ParamError("config: unknown key '" + key + "'");
    }
}

void validate_config(const PipelineConfig& cfg) {
    if (cfg.io_resize_max < 0) {
        throw ParamError("config: io.resize_max must be >= 0");
    }
    if (cfg.hair_se_length < 3 || cfg.hair_se_length % 2 == 0) {
        throw ParamError("config: hair.se_length must be odd and >= 3");
    }
    if (cfg.hair_threshold < 0.0) {
        throw ParamError("config: hair.threshold must be >= 0");
    }
    if (cfg.guided_radius < 0) {
        throw ParamError("config: guided.radius must be >= 0 (0 = auto)");
    }
    if (!(cfg.guided_epsilon > 0.0)) {
        throw ParamError("config: guided.epsilon must be > 0");
    }
    if (cfg.guided_subsample < 1) {
        throw ParamError("config: guided.subsample must be >= 1");
    }
    if (cfg.spatial_theta_degrees < 0.0 || cfg.spatial_theta_degrees > 120.0 ||
        cfg.spatial_theta_degrees == 90.0) {
        throw ParamError("config: spatial.theta_degrees must lie in [0,120] excluding 90");
    }
    if (cfg.spatial_guided_radius < 0) {
        throw ParamError("config: spatial.guided.radius must be >= 0 (0 = auto)");
    }
    if (!(cfg.spatial_guided_epsilon > 0.0)) {
        throw ParamError("config: spatial.guided.epsilon must be > 0");
    }
    if (cfg.spatial_guided_subsample < 1) {
        throw ParamError("config: spatial.guided.subsample must be >= 1");
    }
    if (cfg.coarse_patch_size < 4) {
        throw ParamError("config: coarse.patch_size must be >= 4");
    }
    if (cfg.freq_kernel_size < 3 || cfg.freq_kernel_size % 2 == 0) {
        throw ParamError("config: freq.kernel_size must be odd and >= 3");
    }
    if (!(cfg.freq_f0 > 0.0)) {
        throw ParamError("config: freq.f0 must be > 0");
    }
    if (!(cfg.freq_sigma_ratio > 0.0) || !(cfg.freq_sigma_ratio < 1.0)) {
        throw ParamError("config: freq.sigma_ratio must lie in (0,1)");
    }
    if (cfg.freq_gaussian_sigma < 0.0) {
        throw ParamError("config: freq.gaussian_sigma must be >= 0 (0 = auto)");
    }
    for (const double w : cfg.freq_w_opp) {
        if (w < 0.0 || w > 1.0) {
            throw ParamError("config: freq.w_opp entries must lie in [0,1]");
        }
    }
    for (const double w : cfg.freq_w_lab) {
        if (w < 0.0 || w > 1.0) {
            throw ParamError("config: freq.w_lab entries must lie in [0,1]");
        }
    }
    if (cfg.fusion_entropy_bins < 2) {
        throw ParamError("config: fusion.entropy_bins must be >= 2");
    }
    if (cfg.post_se_radius < 0) {
        throw ParamError("config: post.se_radius must be >= 0 (0 = auto)");
    }
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("config: cannot open '" + path.string() + "'");
    }
    PipelineConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParamError("config: line " + std::to_string(line_no) +
                             " is not a key = value entry");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ParamError("config: line " + std::to_string(line_no) +
                             " has an empty key");
        }
        apply_config_entry(cfg, key, value);
    }
    validate_config(cfg);
    return cfg;
}

std::string serialize_config(const PipelineConfig& cfg) {
    std::ostringstream out;
    out << "io.resize_max = " << cfg.io_resize_max << "\n";
    out << "intensity_mode = "
        << (cfg.intensity_mode == IntensityMode::BroadlyTuned ? "broadly_tuned"
                                                              : "raw_rgb")
        << "\n";
    out << "hair.enabled = " << (cfg.hair_enabled ? "true" : "false") << "\n";
    out << "hair.se_length = " << cfg.hair_se_length << "\n";
    out << "hair.threshold = " << format_double(cfg.hair_threshold) << "\n";
    out << "guided.radius = " << cfg.guided_radius << "\n";
    out << "guided.epsilon = " << format_double(cfg.guided_epsilon) << "\n";
    out << "guided.subsample = " << cfg.guided_subsample << "\n";
    out << "spatial.theta_degrees = " << format_double(cfg.spatial_theta_degrees)
        << "\n";
    out << "spatial.guided.radius = " << cfg.spatial_guided_radius << "\n";
    out << "spatial.guided.epsilon = " << format_double(cfg.spatial_guided_epsilon)
        << "\n";
    out << "spatial.guided.subsample = " << cfg.spatial_guided_subsample << "\n";
    out << "lab.variance_denominator = "
        << (cfg.lab_variance_denominator ? "true" : "false") << "\n";
    out << "coarse.patch_size = " << cfg.coarse_patch_size << "\n";
    out << "coarse.seed = " << cfg.coarse_seed << "\n";
    out << "coarse.whitened = " << (cfg.coarse_whitened ? "true" : "false") << "\n";
    out << "coarse.weight_mode = "
        << (cfg.coarse_weight_mode == CoarseWeightMode::Membership ? "membership"
                                                                   : "uniform")
        << "\n";
    out << "freq.kernel_size = " << cfg.freq_kernel_size << "\n";
    out << "freq.f0 = " << format_double(cfg.freq_f0) << "\n";
    out << "freq.sigma_ratio = " << format_double(cfg.freq_sigma_ratio) << "\n";
    out << "freq.gaussian_sigma = " << format_double(cfg.freq_gaussian_sigma) << "\n";
    out << "freq.w_opp = " << format_double(cfg.freq_w_opp[0]) << ", "
        << format_double(cfg.freq_w_opp[1]) << ", "
        << format_double(cfg.freq_w_opp[2]) << "\n";
    out << "freq.w_lab = " << format_double(cfg.freq_w_lab[0]) << ", "
        << format_double(cfg.freq_w_lab[1]) << "\n";
    out << "fusion.chart_mode = " << (cfg.fusion_chart_mode ? "true" : "false")
        << "\n";
    out << "fusion.entropy_bins = " << cfg.fusion_entropy_bins << "\n";
    out << "post.se_radius = " << cfg.post_se_radius << "\n";
    out << "post.keep_largest = " << (cfg.post_keep_largest ? "true" : "false")
        << "\n";
    return out.str();
}

int effective_hair_se_length(const PipelineConfig& cfg, int long_side) {
    int len = scale_round(cfg.hair_se_length, long_side, 3);
    if (len % 2 == 0) {
        ++len;
    }
    return len;
}

int effective_guided_radius(const PipelineConfig& cfg, int long_side) {
    if (cfg.guided_radius > 0) {
        return cfg.guided_radius;
    }
    return std::max(4, static_cast<int>(std::lround(0.02 * long_side)));
}

int effective_spatial_guided_radius(const PipelineConfig& cfg, int long_side) {
    if (cfg.spatial_guided_radius > 0) {
        return cfg.spatial_guided_radius;
    }
    return std::max(4, static_cast<int>(std::lround(0.02 * long_side)));
}

int effective_patch_size(const PipelineConfig& cfg, int long_side) {
    return scale_round(cfg.coarse_patch_size, long_side, 4);
}

double effective_gaussian_sigma(const PipelineConfig& cfg, int long_side) {
    if (cfg.freq_gaussian_sigma > 0.0) {
        return cfg.freq_gaussian_sigma;
    }
    return 0.025 * long_side;
}

int effective_post_se_radius(const PipelineConfig& cfg, int long_side) {
    if (cfg.post_se_radius > 0) {
        return cfg.post_se_radius;
    }
    return std::max(3, static_cast<int>(std::lround(0.01 * long_side)));
}

}  // namespace lesionseg
