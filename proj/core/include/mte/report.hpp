#ifndef MTE_REPORT_HPP
#define MTE_REPORT_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace mte {

/// Thrown for malformed input, usage errors and broken invariants.
/// Validation findings are data (Report), not exceptions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    Error(const std::string& where, const std::string& msg)
        : std::runtime_error(where + ": " + msg) {}
};

/// One line of a machine-readable report: KIND<TAB>path<TAB>detail.
struct Record {
    std::string kind;
    std::string path;
    std::string detail;

    friend bool operator==(const Record&, const Record&) = default;
};

class Report {
public:
    void add(std::string kind, std::string path, std::string detail) {
        records_.push_back({std::move(kind), std::move(path), std::move(detail)});
    }
    void error(std::string path, std::string detail) {
        add("ERROR", std::move(path), std::move(detail));
    }
    void warning(std::string path, std::string detail) {
        add("WARNING", std::move(path), std::move(detail));
    }
    void info(std::string path, std::string detail) {
        add("INFO", std::move(path), std::move(detail));
    }
    void append(const Report& other) {
        records_.insert(records_.end(), other.records_.begin(), other.records_.end());
    }

    const std::vector<Record>& records() const { return records_; }
    bool empty() const { return records_.empty(); }

    bool has_errors() const {
        for (const auto& r : records_)
            if (r.kind == "ERROR") return true;
        return false;
    }
    size_t count() const { return records_.size(); }
    size_t count(const std::string& kind) const {
        size_t n = 0;
        for (const auto& r : records_)
            if (r.kind == kind) ++n;
        return n;
    }

    std::string to_tsv() const {
        std::string out;
        for (const auto& r : records_) {
            out += r.kind;
            out += '\t';
            out += r.path;
            out += '\t';
            out += r.detail;
            out += '\n';
        }
        return out;
    }

private:
    std::vector<Record> records_;
};

} // namespace mte

#endif
