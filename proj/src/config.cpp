#include "revsum/config.hpp"

#include <fstream>
#include <sstream>

#include "revsum/errors.hpp"
#include "revsum/text_util.hpp"

namespace revsum {

namespace {

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw UsageError("bad_config", "expected boolean for '" + key + "', got '" + value + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream stream(value);
    T out{};
    if (!(stream >> out) || !(stream >> std::ws).eof()) {
        throw UsageError("bad_config", "bad numeric value for '" + key + "': '" + value + "'");
    }
    return out;
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

PipelineConfig PipelineConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("bad_config", "cannot open config file: " + path.string());
    }
    PipelineConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("bad_config", "config line " + std::to_string(line_no) +
                                               " is not key=value: " + line);
        }
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t");
            return s.substr(a, b - a + 1);
        };
        config.apply_kv(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    return config;
}

void PipelineConfig::apply_kv(const std::string& key, const std::string& value) {
    if (key == "dataset") dataset_path = value;
    else if (key == "assets") asset_dir = value;
    else if (key == "out") output_dir = value;
    else if (key == "k_summary") k_summary = parse_number<int>(key, value);
    else if (key == "k_min") k_min = parse_number<int>(key, value);
    else if (key == "k_max") k_max = parse_number<int>(key, value);
    else if (key == "k_step") k_step = parse_number<int>(key, value);
    else if (key == "alpha") alpha = parse_number<double>(key, value);
    else if (key == "beta") beta = parse_number<double>(key, value);
    else if (key == "iterations") iterations = parse_number<int>(key, value);
    else if (key == "infer_sweeps") infer_sweeps = parse_number<int>(key, value);
    else if (key == "holdout_fraction") holdout_fraction = parse_number<double>(key, value);
    else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
    else if (key == "min_doc_freq") min_doc_freq = parse_number<int>(key, value);
    else if (key == "min_reviews") min_reviews = parse_number<int>(key, value);
    else if (key == "rouge_stem") rouge_stem = parse_bool(key, value);
    else if (key == "rouge_stopwords") rouge_stopwords = parse_bool(key, value);
    else if (key == "summary_reweight") summary_reweight = parse_bool(key, value);
    else if (key == "jobs") jobs = parse_number<int>(key, value);
    else if (key == "variants") {
        variants.clear();
        std::istringstream stream(value);
        std::string name;
        while (std::getline(stream, name, ',')) {
            if (!name.empty()) variants.push_back(rouge_variant_from_name(name));
        }
        if (variants.empty()) {
            throw UsageError("bad_config", "variants list is empty");
        }
    } else {
        throw UsageError("bad_config", "unknown config key: " + key);
    }
}

std::string PipelineConfig::canonical() const {
    std::vector<std::string> lines;
    lines.push_back("alpha=" + format_double(alpha));
    lines.push_back("assets=" + asset_dir);
    lines.push_back("beta=" + format_double(beta));
    lines.push_back("dataset=" + dataset_path);
    lines.push_back("holdout_fraction=" + format_double(holdout_fraction));
    lines.push_back("infer_sweeps=" + std::to_string(infer_sweeps));
    lines.push_back("iterations=" + std::to_string(iterations));
    lines.push_back("k_max=" + std::to_string(k_max));
    lines.push_back("k_min=" + std::to_string(k_min));
    lines.push_back("k_step=" + std::to_string(k_step));
    lines.push_back("k_summary=" + std::to_string(k_summary));
    lines.push_back("min_doc_freq=" + std::to_string(min_doc_freq));
    lines.push_back("min_reviews=" + std::to_string(min_reviews));
    lines.push_back("rouge_stem=" + std::string(rouge_stem ? "true" : "false"));
    lines.push_back("rouge_stopwords=" + std::string(rouge_stopwords ? "true" : "false"));
    lines.push_back("seed=" + std::to_string(seed));
    lines.push_back("summary_reweight=" + std::string(summary_reweight ? "true" : "false"));
    std::string variant_list;
    for (const auto variant : variants) {
        if (!variant_list.empty()) variant_list += ',';
        variant_list += rouge_variant_name(variant);
    }
    lines.push_back("variants=" + variant_list);

    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

std::string PipelineConfig::config_hash() const { return hex64(fnv1a64(canonical())); }

void PipelineConfig::validate() const {
    if (k_summary < 1) throw UsageError("bad_config", "k_summary must be >= 1");
    if (k_min < 1 || k_max < k_min) throw UsageError("bad_config", "invalid K range");
    if (k_step < 1) throw UsageError("bad_config", "k_step must be >= 1");
    if (beta <= 0) throw UsageError("bad_config", "beta must be > 0");
    if (iterations < 1) throw UsageError("bad_config", "iterations must be >= 1");
    if (infer_sweeps < 1) throw UsageError("bad_config", "infer_sweeps must be >= 1");
    if (holdout_fraction < 0 || holdout_fraction >= 1) {
        throw UsageError("bad_config", "holdout_fraction must be in [0, 1)");
    }
    if (min_doc_freq < 1) throw UsageError("bad_config", "min_doc_freq must be >= 1");
    if (jobs < 1) throw UsageError("bad_config", "jobs must be >= 1");
    if (variants.empty()) throw UsageError("bad_config", "variants list is empty");
}

}  // namespace revsum
