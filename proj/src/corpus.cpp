#include "revsum/corpus.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "revsum/errors.hpp"
#include "revsum/log.hpp"
#include "revsum/text_util.hpp"

namespace revsum {

namespace {

ProductRecord parse_product_line(const nlohmann::json& obj) {
    if (!obj.is_object()) throw DataError("bad_record", "line is not a JSON object");
    ProductRecord record;
    if (!obj.contains("product_id") || !obj["product_id"].is_string()) {
        throw DataError("bad_record", "missing or non-string product_id");
    }
    record.product_id = obj["product_id"].get<std::string>();
    if (record.product_id.empty()) {
        throw DataError("bad_record", "empty product_id");
    }
    if (obj.contains("reviews")) {
        if (!obj["reviews"].is_array()) {
            throw DataError("bad_record", "reviews is not an array");
        }
        for (const auto& r : obj["reviews"]) {
            if (!r.is_string()) throw DataError("bad_record", "review entry is not a string");
            record.reviews.push_back(r.get<std::string>());
        }
    }
    if (obj.contains("summary") && !obj["summary"].is_null()) {
        if (!obj["summary"].is_string()) {
            throw DataError("bad_record", "summary is neither string nor null");
        }
        record.reference_summary = obj["summary"].get<std::string>();
    }
    return record;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options,
                     std::vector<LoadIssue>* issues) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("unreadable_file", "cannot open dataset file: " + path.string());
    }

    Dataset dataset;
    dataset.source_tag = options.source_tag.empty() ? path.filename().string()
                                                    : options.source_tag;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    int line_no = 0;
    int replaced_total = 0;
    int dropped_short = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        replaced_total += utf8_sanitize(line);
        try {
            ProductRecord record =
                parse_product_line(nlohmann::json::parse(line));
            if (!seen_ids.insert(record.product_id).second) {
                throw DataError("duplicate_product_id",
                                "duplicate product_id '" + record.product_id +
                                    "' at line " + std::to_string(line_no));
            }
            if (options.min_reviews > 0 &&
                static_cast<int>(record.reviews.size()) < options.min_reviews) {
                ++dropped_short;
                continue;
            }
            if (record.reviews.empty()) {
                log_warn("product '" + record.product_id +
                         "' has no reviews; it will be skipped by training stages");
            }
            dataset.products.push_back(std::move(record));
        } catch (const DataError& e) {
            if (std::string_view(e.code()) == "duplicate_product_id") throw;
            LoadIssue issue{line_no, e.what()};
            log_warn("line " + std::to_string(line_no) + ": " + issue.message);
            if (issues) issues->push_back(std::move(issue));
        } catch (const nlohmann::json::exception& e) {
            LoadIssue issue{line_no, std::string("invalid JSON: ") + e.what()};
            log_warn("line " + std::to_string(line_no) + ": " + issue.message);
            if (issues) issues->push_back(std::move(issue));
        }
    }

    if (replaced_total > 0) {
        log_warn(std::to_string(replaced_total) +
                 " invalid UTF-8 byte(s) replaced with U+FFFD in " + path.string());
    }
    if (dropped_short > 0) {
        log_info(std::to_string(dropped_short) + " product(s) dropped by min_reviews=" +
                 std::to_string(options.min_reviews));
    }
    return dataset;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("unwritable_file", "cannot write dataset file: " + path.string());
    }
    for (const auto& product : dataset.products) {
        nlohmann::ordered_json obj;
        obj["product_id"] = product.product_id;
        obj["reviews"] = product.reviews;
        if (product.reference_summary) {
            obj["summary"] = *product.reference_summary;
        } else {
            obj["summary"] = nullptr;
        }
        out << obj.dump() << '\n';
    }
}

CorpusStats dataset_stats(const Dataset& dataset, const Segmenter& segmenter) {
    CorpusStats stats;
    stats.n_products = static_cast<std::int64_t>(dataset.products.size());
    for (const auto& product : dataset.products) {
        stats.n_reviews += static_cast<std::int64_t>(product.reviews.size());
        for (const auto& review : product.reviews) {
            stats.n_review_sentences +=
                static_cast<std::int64_t>(segmenter(review).size());
        }
        if (product.reference_summary) {
            ++stats.n_summaries;
            stats.n_summary_sentences +=
                static_cast<std::int64_t>(segmenter(*product.reference_summary).size());
        }
    }
    return stats;
}

}  // namespace revsum
