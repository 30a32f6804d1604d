#include "gridnav/pgm.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gridnav {

namespace {

void write_header(std::ofstream& out, const GridGeometry& geom) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", geom.delta);
    out << "P5\n# delta=" << buf << "\n" << geom.n << " " << geom.n << "\n255\n";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

struct PgmData {
    GridGeometry geom;
    std::vector<std::uint8_t> bytes;
};

// Reads the P5 header (skipping '#' comments, picking up the delta comment
// if present) and the raster.
PgmData read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");

    std::string magic;
    in >> magic;
    if (magic != "P5") throw std::runtime_error("'" + path + "': not a binary PGM (P5) file");

    double delta = 1.0;
    int fields[3];
    int got = 0;
    while (got < 3) {
        in >> std::ws;
        if (in.peek() == '#') {
            std::string comment;
            std::getline(in, comment);
            double d = 0.0;
            if (std::sscanf(comment.c_str(), "# delta=%lf", &d) == 1 && d > 0.0) delta = d;
            continue;
        }
        if (!(in >> fields[got])) throw std::runtime_error("'" + path + "': malformed PGM header");
        ++got;
    }
    if (fields[0] != fields[1])
        throw std::runtime_error("'" + path + "': grid maps must be square");
    if (fields[2] != 255) throw std::runtime_error("'" + path + "': maxval must be 255");
    in.get(); // single whitespace byte after maxval

    PgmData data;
    data.geom = GridGeometry{fields[0], delta};
    data.geom.validate();
    data.bytes.resize(data.geom.size());
    in.read(reinterpret_cast<char*>(data.bytes.data()), static_cast<std::streamsize>(data.bytes.size()));
    if (in.gcount() != static_cast<std::streamsize>(data.bytes.size()))
        throw std::runtime_error("'" + path + "': truncated PGM raster");
    return data;
}

} // namespace

void write_pgm(const TernaryGrid& grid, const std::string& path) {
    std::ofstream out = open_out(path);
    write_header(out, grid.geometry());
    std::vector<std::uint8_t> row(grid.geometry().size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        switch (grid.at_index(i)) {
            case Ternary::Free: row[i] = 255; break;
            case Ternary::Obstacle: row[i] = 0; break;
            case Ternary::Undecided: row[i] = 128; break;
        }
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (!out) throw std::runtime_error("write failed: '" + path + "'");
}

void write_pgm(const BinaryGrid& grid, const std::string& path) {
    std::ofstream out = open_out(path);
    write_header(out, grid.geometry());
    std::vector<std::uint8_t> row(grid.geometry().size());
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = grid.at_index(i) ? 0 : 255;
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (!out) throw std::runtime_error("write failed: '" + path + "'");
}

void write_pgm_weights(const GridGeometry& geom, const std::vector<double>& weights,
                       const std::string& path) {
    if (weights.size() != geom.size())
        throw std::invalid_argument("weight vector does not match geometry");
    std::ofstream out = open_out(path);
    write_header(out, geom);
    std::vector<std::uint8_t> row(weights.size());
    for (std::size_t i = 0; i < row.size(); ++i)
        row[i] = static_cast<std::uint8_t>(std::lround(255.0 * weights[i]));
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (!out) throw std::runtime_error("write failed: '" + path + "'");
}

TernaryGrid read_pgm_ternary(const std::string& path) {
    PgmData data = read_pgm(path);
    TernaryGrid grid(data.geom);
    for (std::size_t i = 0; i < data.bytes.size(); ++i) {
        switch (data.bytes[i]) {
            case 255: grid.set_index(i, Ternary::Free); break;
            case 0: grid.set_index(i, Ternary::Obstacle); break;
            case 128: grid.set_index(i, Ternary::Undecided); break;
            default:
                throw std::runtime_error("'" + path + "': pixel value " +
                                         std::to_string(data.bytes[i]) +
                                         " is not one of {0, 128, 255}");
        }
    }
    return grid;
}

BinaryGrid read_pgm_binary(const std::string& path) {
    PgmData data = read_pgm(path);
    BinaryGrid grid(data.geom);
    for (std::size_t i = 0; i < data.bytes.size(); ++i) {
        if (data.bytes[i] == 255) grid.set_index(i, 0);
        else if (data.bytes[i] == 0) grid.set_index(i, 1);
        else
            throw std::runtime_error("'" + path + "': pixel value " +
                                     std::to_string(data.bytes[i]) +
                                     " is not binary (0 or 255)");
    }
    return grid;
}

} // namespace gridnav
