// emit.hpp — Deterministic byte emitters for matrix-valued results: plain
// PGM (P2) heatmaps and %.12e CSV, both with LF endings so golden files
// compare bit-exact across platforms.

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "qfc/matrix.hpp"

namespace qfc {

struct HeatmapImage {
    std::size_t width = 0, height = 0;
    std::vector<double> cells;  // row-major, nonnegative

    static HeatmapImage from(const RealMatrix& m) {
        HeatmapImage img;
        img.width = m.cols;
        img.height = m.rows;
        img.cells = m.a;
        img.validate();
        return img;
    }

    void validate() const {
        if (width == 0 || height == 0 || cells.size() != width * height)
            throw DomainError("HeatmapImage: dimension mismatch");
        for (double v : cells)
            if (!std::isfinite(v) || v < 0.0)
                throw DomainError("HeatmapImage: cells must be finite and nonnegative");
    }

    double max_value() const {
        double m = 0.0;
        for (double v : cells) m = std::max(m, v);
        return m;
    }
};

// Plain P2, maxval 255, cell = round(255 x / max) with round-half-away-
// from-zero; an all-zero image emits all-black.
inline std::string to_pgm(const HeatmapImage& img) {
    img.validate();
    const double max = img.max_value();
    std::string out = "P2\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                      "\n255\n";
    for (std::size_t r = 0; r < img.height; ++r) {
        for (std::size_t c = 0; c < img.width; ++c) {
            const double x = img.cells[r * img.width + c];
            const long v = (max > 0.0) ? std::lround(255.0 * x / max) : 0;
            if (c > 0) out += ' ';
            out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

inline std::string to_csv(const RealMatrix& m) {
    std::string out;
    char buf[40];
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            std::snprintf(buf, sizeof(buf), "%.12e", m(r, c));
            if (c > 0) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace qfc
