#include "mbcsim/io.hpp"

#include <cstdio>
#include <memory>

#include "mbcsim/model.hpp"

namespace mbcsim {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_for_write(const std::string& path) {
    File f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    return f;
}

}  // namespace

void write_probability_csv(const std::string& path, std::span<const ProbabilityRow> rows) {
    File f = open_for_write(path);
    std::fprintf(f.get(), "scenario,proposal_merit,funded_probability,std_error\n");
    for (const auto& r : rows)
        std::fprintf(f.get(), "%s,%d,%.12g,%.12g\n", r.scenario.c_str(), r.merit, r.value,
                     r.std_error);
}

void write_accuracy_csv(const std::string& path, std::span<const AccuracyRow> rows) {
    File f = open_for_write(path);
    std::fprintf(f.get(), "scenario,m,topT_accuracy,kendall_tau\n");
    for (const auto& r : rows)
        std::fprintf(f.get(), "%s,%d,%.12g,%.12g\n", r.scenario.c_str(), r.m, r.accuracy,
                     r.kendall_tau);
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    File f = open_for_write(path);
    const std::string text = doc.dump(2);
    std::fwrite(text.data(), 1, text.size(), f.get());
    std::fputc('\n', f.get());
}

}  // namespace mbcsim
