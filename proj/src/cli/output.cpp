#include "internal.hpp"

#include <fstream>

namespace qes::cli {

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write " + path.string());
    out << content;
    if (!out)
        throw Error("write failed for " + path.string());
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

std::string pgm(int width, int height, const std::vector<unsigned char>& pixels)
{
    std::string s = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    s.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
    return s;
}

void write_manifest(const std::filesystem::path& out_dir, const Manifest& m)
{
    Json j;
    j["tool"] = "qes-scatter";
    j["subcommand"] = m.subcommand;
    j["config"] = m.config;
    j["threads"] = m.threads;
    j["tolerance"] = m.tolerance;
    j["outputs"] = m.outputs;
    j["exit_code"] = m.exit_code;
    write_file(out_dir / "manifest.json", dump(j));
}

} // namespace qes::cli
