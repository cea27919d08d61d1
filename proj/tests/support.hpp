#ifndef MTE_TESTS_SUPPORT_HPP
#define MTE_TESTS_SUPPORT_HPP

#include "mte/msd.hpp"
#include "mte/spec.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace support {

inline std::string fixture_path(const std::string& name) {
    return std::string(MTE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline const mte::Specification& fixture_spec() {
    static mte::Specification spec =
        mte::load_spec_file(fixture_path("fixture.spec"), mte::SpecFormat::tabular);
    return spec;
}

/// Deterministic sample of valid feature structures for one language,
/// drawn from its particular tables (every value listed there is valid for
/// the language).
inline std::vector<mte::FeatureStructure> sample_structures(const mte::Specification& spec,
                                                            const std::string& language,
                                                            size_t count, uint32_t seed) {
    const mte::LanguageSection* sec = spec.section(language);
    if (!sec) throw std::runtime_error("no section for " + language);
    std::mt19937 rng(seed);
    std::vector<mte::FeatureStructure> out;
    while (out.size() < count) {
        for (const auto& table : sec->tables) {
            if (out.size() == count) break;
            mte::FeatureStructure fs;
            fs.language = language;
            fs.category_code = table.category_code;
            for (const auto& attr : table.attributes) {
                std::uniform_int_distribution<size_t> pick(0, attr.values.size());
                size_t i = pick(rng);
                if (i > 0) fs.assignments[attr.name] = attr.values[i - 1].name;
            }
            out.push_back(std::move(fs));
        }
    }
    return out;
}

} // namespace support

#endif
