#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "swarmnav/astar.hpp"
#include "swarmnav/error.hpp"
#include "swarmnav/scene.hpp"

namespace swarmnav {

// Diffusion state: 3 x H x W tensor. Channel 0 holds the start one-hot,
// channel 1 the goal one-hot, channel 2 the path occupancy. Values are
// nominally in [0,1] for clean masks and unbounded mid-diffusion.
struct TrajectoryMask {
    int height = 0;
    int width = 0;
    std::vector<double> data;  // [channel][row][col]

    TrajectoryMask() = default;
    TrajectoryMask(int h, int w) : height(h), width(w), data(static_cast<std::size_t>(3) * h * w, 0.0) {}

    double& at(int c, int y, int x) {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }

    bool same_shape(const TrajectoryMask& o) const {
        return height == o.height && width == o.width;
    }

    double channel_sum(int c) const {
        const std::size_t plane = static_cast<std::size_t>(height) * width;
        double s = 0.0;
        for (std::size_t i = plane * c; i < plane * (c + 1); ++i) s += data[i];
        return s;
    }
};

inline TrajectoryMask path_to_mask(const PixelPath& path, int height, int width,
                                   int dilate_radius = 0) {
    if (path.empty()) throw OutOfBounds("empty path");
    TrajectoryMask m(height, width);
    for (const Cell& c : path) {
        if (c.x < 0 || c.y < 0 || c.x >= width || c.y >= height)
            throw OutOfBounds("path cell outside mask dims");
        for (int dy = -dilate_radius; dy <= dilate_radius; ++dy) {
            for (int dx = -dilate_radius; dx <= dilate_radius; ++dx) {
                const int x = c.x + dx;
                const int y = c.y + dy;
                if (x >= 0 && y >= 0 && x < width && y < height) m.at(2, y, x) = 1.0;
            }
        }
    }
    m.at(0, path.front().y, path.front().x) = 1.0;
    m.at(1, path.back().y, path.back().x) = 1.0;
    return m;
}

// Overwrites the endpoint channels with exact one-hots; the path channel is
// left untouched.
inline void inpaint_endpoints(TrajectoryMask& m, const Cell& start, const Cell& goal) {
    if (start.x < 0 || start.y < 0 || start.x >= m.width || start.y >= m.height ||
        goal.x < 0 || goal.y < 0 || goal.x >= m.width || goal.y >= m.height)
        throw OutOfBounds("endpoint outside mask dims");
    const std::size_t plane = static_cast<std::size_t>(m.height) * m.width;
    std::fill_n(m.data.begin(), plane, 0.0);
    std::fill_n(m.data.begin() + plane, plane, 0.0);
    m.at(0, start.y, start.x) = 1.0;
    m.at(1, goal.y, goal.x) = 1.0;
}

// Flat binary mask file: one ASCII header line "TMSK1 <channels> <height>
// <width> float64\n" followed by little-endian doubles in [c][y][x] order.
inline void write_mask(const TrajectoryMask& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open mask file for writing: " + path);
    char header[64];
    std::snprintf(header, sizeof(header), "TMSK1 3 %d %d float64\n", m.height, m.width);
    f.write(header, static_cast<std::streamsize>(std::strlen(header)));
    f.write(reinterpret_cast<const char*>(m.data.data()),
            static_cast<std::streamsize>(m.data.size() * sizeof(double)));
}

inline TrajectoryMask read_mask(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open mask file: " + path);
    std::string header;
    std::getline(f, header);
    int channels = 0, h = 0, w = 0;
    char dtype[16] = {0};
    if (std::sscanf(header.c_str(), "TMSK1 %d %d %d %15s", &channels, &h, &w, dtype) != 4 ||
        channels != 3 || std::string(dtype) != "float64" || h <= 0 || w <= 0)
        throw MalformedConfig("bad mask header: " + header);
    TrajectoryMask m(h, w);
    f.read(reinterpret_cast<char*>(m.data.data()),
           static_cast<std::streamsize>(m.data.size() * sizeof(double)));
    if (!f) throw MalformedConfig("mask file truncated: " + path);
    return m;
}

// 8-bit binary PGM of one channel, values clamped to [0,1]; lossy, meant for
// eyeballing masks in an image viewer.
inline void write_channel_pgm(const TrajectoryMask& m, int channel, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open pgm file for writing: " + path);
    f << "P5\n" << m.width << " " << m.height << "\n255\n";
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            const double v = std::clamp(m.at(channel, y, x), 0.0, 1.0);
            const unsigned char b = static_cast<unsigned char>(v * 255.0 + 0.5);
            f.write(reinterpret_cast<const char*>(&b), 1);
        }
    }
}

}  // namespace swarmnav
