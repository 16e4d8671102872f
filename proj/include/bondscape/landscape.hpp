#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bondscape/config.hpp"
#include "bondscape/io.hpp"

namespace bondscape {

// Per-client holdings available for a market maker to absorb.
struct Resources {
    double bonds = 0.0;
    double cash = 0.0;
    bool operator==(const Resources&) const = default;
};

// Static client grid. Cells are written once at generation; afterwards the
// only mutation is harvest(), which empties a cell. Nothing replenishes.
class Landscape {
public:
    Landscape(GridDims dims, std::vector<Resources> cells)
        : dims_(dims), cells_(std::move(cells)) {
        if (cells_.size() != static_cast<std::size_t>(dims_.cell_count()))
            throw std::invalid_argument("cell vector does not match grid dimensions");
    }

    GridDims dims() const { return dims_; }
    int width() const { return dims_.width; }
    int height() const { return dims_.height; }

    const Resources& cell(GridPos p) const {
        check_bounds(p);
        return cells_[index(p)];
    }

    // Takes the full contents of the cell and leaves it empty.
    Resources harvest(GridPos p) {
        check_bounds(p);
        Resources& c = cells_[index(p)];
        const Resources taken = c;
        c = Resources{};
        return taken;
    }

    Resources totals() const {
        Resources t;
        for (const Resources& c : cells_) {
            t.bonds += c.bonds;
            t.cash += c.cash;
        }
        return t;
    }

    // Raster order: one line per cell, y rows outermost, x within a row.
    void write_csv(std::ostream& os) const {
        os << "x,y,bonds,cash\n";
        for (int y = 0; y < dims_.height; ++y) {
            for (int x = 0; x < dims_.width; ++x) {
                const Resources& c = cells_[static_cast<std::size_t>(y) * dims_.width + x];
                os << x << ',' << y << ',' << format_double(c.bonds) << ','
                   << format_double(c.cash) << '\n';
            }
        }
    }

private:
    std::size_t index(GridPos p) const {
        return static_cast<std::size_t>(p.y) * dims_.width + p.x;
    }
    void check_bounds(GridPos p) const {
        if (!dims_.contains(p))
            throw std::out_of_range("cell position outside the grid");
    }

    GridDims dims_;
    std::vector<Resources> cells_;
};

// Height of one mound at Chebyshev distance d from its center.
inline double mound_value(const MoundSpec& m, GridPos p) {
    const int d = chebyshev(m.center, p);
    const double v = m.peak - m.peak * d / m.radius;
    return v > 0.0 ? v : 0.0;
}

// Builds the client grid from the mound list: per cell and resource kind,
// the max over mounds of the linear decay value, rounded half-up.
inline Landscape generate_landscape(const ModelConfig& config) {
    config.validate();
    std::vector<Resources> cells(static_cast<std::size_t>(config.grid.cell_count()));
    for (int y = 0; y < config.grid.height; ++y) {
        for (int x = 0; x < config.grid.width; ++x) {
            double bonds = 0.0;
            double cash = 0.0;
            for (const MoundSpec& m : config.mounds) {
                const double v = mound_value(m, GridPos{x, y});
                if (m.kind == ResourceKind::bond) {
                    if (v > bonds) bonds = v;
                } else {
                    if (v > cash) cash = v;
                }
            }
            cells[static_cast<std::size_t>(y) * config.grid.width + x] =
                Resources{std::floor(bonds + 0.5), std::floor(cash + 0.5)};
        }
    }
    return Landscape(config.grid, std::move(cells));
}

}  // namespace bondscape
