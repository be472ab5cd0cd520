#pragma once

#include "qes/born.hpp"
#include "qes/optics.hpp"
#include "qes/serialization.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qes::cli {

/// Reads a config object and records every value it hands out, defaults
/// included, so the manifest can echo the resolved configuration.
class Config {
public:
    explicit Config(Json j);

    bool has(const char* key) const;
    double number(const char* key, double fallback);
    double number(const char* key);
    int integer(const char* key, int fallback);
    std::string text(const char* key, const std::string& fallback);
    std::vector<double> numbers(const char* key);
    const Json& raw(const char* key) const;
    /// Store an already-resolved sub-object.
    void record(const char* key, Json value);

    void allow(std::initializer_list<const char*> keys) const;
    const Json& resolved() const { return resolved_; }

private:
    Json input_;
    Json resolved_;
};

Json load_json(const std::filesystem::path& path);

struct ScattererSpec {
    Scatterer scatterer;
    std::optional<PermittivityProfile> profile;
    Json resolved;
};

/// Exactly one of "potential", "family", "permittivity".
ScattererSpec parse_scatterer(const Json& j, double alpha);
PermittivityProfile parse_profile(const Json& j, Json* resolved);

Side parse_side(const std::string& s);
std::string side_name(Side s);

// output
void write_file(const std::filesystem::path& path, const std::string& content);
std::string dump(const Json& j);
/// Binary P5 graymap, rows top to bottom.
std::string pgm(int width, int height, const std::vector<unsigned char>& pixels);

struct Manifest {
    std::string subcommand;
    Json config;
    int threads = 0;
    double tolerance = 0.0;
    std::vector<std::string> outputs;
    int exit_code = 0;
};
void write_manifest(const std::filesystem::path& out_dir, const Manifest& m);

} // namespace qes::cli
