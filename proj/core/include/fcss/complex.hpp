#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fcss/gf2.hpp"

namespace fcss {

inline constexpr int kMaxDim = 4;

enum class Background : std::uint8_t { OpenCube, Torus, Sphere };

// Primal: every axis carries vertices at integer points 0..L.
// Adapted: rough (E) axes are primal, smooth axes are shifted by a half step so
// that no cells sit on the smooth faces.
enum class Cellulation : std::uint8_t { Primal, Adapted };

enum class LabelKind : std::uint8_t { Bulk, OuterE, OuterM, HoleE, HoleM };

struct BoundaryLabel {
    LabelKind kind = LabelKind::Bulk;
    std::int32_t id = -1;  // outer face id (2*axis + side) or hole id

    bool is_e() const noexcept { return kind == LabelKind::OuterE || kind == LabelKind::HoleE; }
    bool is_m() const noexcept { return kind == LabelKind::OuterM || kind == LabelKind::HoleM; }
    bool is_boundary() const noexcept { return kind != LabelKind::Bulk; }
    bool operator==(const BoundaryLabel&) const = default;
};

std::string to_string(BoundaryLabel l);
BoundaryLabel parse_label(const std::string& s);
std::string to_string(Background b);
Background parse_background(const std::string& s);
std::string to_string(Cellulation c);
Cellulation parse_cellulation(const std::string& s);

// Selects boundary labels by kind, optionally pinned to one id (id -1 = any).
class LabelSet {
public:
    LabelSet() = default;
    static LabelSet kinds(std::initializer_list<LabelKind> ks);
    static LabelSet e_labels() { return kinds({LabelKind::OuterE, LabelKind::HoleE}); }
    static LabelSet m_labels() { return kinds({LabelKind::OuterM, LabelKind::HoleM}); }
    static LabelSet outer() { return kinds({LabelKind::OuterE, LabelKind::OuterM}); }
    static LabelSet all_boundary() {
        return kinds({LabelKind::OuterE, LabelKind::OuterM, LabelKind::HoleE, LabelKind::HoleM});
    }

    LabelSet& add(BoundaryLabel l) {
        items_.push_back(l);
        return *this;
    }
    bool matches(BoundaryLabel l) const noexcept;
    bool empty() const noexcept { return items_.empty(); }
    bool intersects(const LabelSet& o) const noexcept;
    std::span<const BoundaryLabel> items() const noexcept { return items_; }

private:
    std::vector<BoundaryLabel> items_;
};

// Doubled coordinates: an axis value is odd or even depending on whether the
// cell is extended along that axis (and on the axis kind).
using Coord = std::array<std::int32_t, kMaxDim>;

struct Cell {
    std::uint32_t id = 0;
    Coord x2{};
    std::uint8_t extent = 0;  // bit a set: cell extended along axis a
    BoundaryLabel label;
};

struct CoordHash {
    std::size_t operator()(const Coord& c) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto v : c) h = (h ^ static_cast<std::uint32_t>(v)) * 1099511628211ULL;
        return h;
    }
};

// Compressed incidence lists: row i lists the ids adjacent to item i.
class Incidence {
public:
    Incidence() : offsets_{0} {}
    void push_row(std::span<const std::uint32_t> ids) {
        idx_.insert(idx_.end(), ids.begin(), ids.end());
        offsets_.push_back(static_cast<std::uint32_t>(idx_.size()));
    }
    std::size_t rows() const noexcept { return offsets_.size() - 1; }
    std::span<const std::uint32_t> row(std::size_t i) const {
        return {idx_.data() + offsets_[i], idx_.data() + offsets_[i + 1]};
    }
    std::size_t nnz() const noexcept { return idx_.size(); }
    bool operator==(const Incidence&) const = default;

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> idx_;
};

class CellComplex {
public:
    // boundary[k] has one row per k-cell listing (k-1)-cell ids; boundary[0] is empty.
    CellComplex(int dim, Background bg, int side, Cellulation cellulation, std::uint8_t primal_axes,
                std::vector<std::vector<Cell>> cells, std::vector<Incidence> boundary);

    int dim() const noexcept { return dim_; }
    Background background() const noexcept { return bg_; }
    int side() const noexcept { return side_; }
    Cellulation cellulation() const noexcept { return cellulation_; }
    std::uint8_t primal_axes() const noexcept { return primal_axes_; }

    std::size_t count(int k) const { return cells_.at(static_cast<std::size_t>(k)).size(); }
    std::span<const Cell> cells(int k) const { return cells_.at(static_cast<std::size_t>(k)); }
    const Cell& cell(int k, std::uint32_t id) const { return cells_.at(static_cast<std::size_t>(k)).at(id); }

    std::span<const std::uint32_t> boundary_of(int k, std::uint32_t id) const { return bnd_[static_cast<std::size_t>(k)].row(id); }
    std::span<const std::uint32_t> coboundary_of(int k, std::uint32_t id) const { return cob_[static_cast<std::size_t>(k)].row(id); }
    const Incidence& boundary(int k) const { return bnd_.at(static_cast<std::size_t>(k)); }

    // Rows index (k-1)-cells, columns index k-cells.
    Gf2Matrix boundary_matrix(int k) const;
    std::optional<std::uint32_t> find(int k, const Coord& x2) const;
    long long euler_characteristic() const;
    std::size_t total_cells() const;

private:
    int dim_;
    Background bg_;
    int side_;
    Cellulation cellulation_;
    std::uint8_t primal_axes_;
    std::vector<std::vector<Cell>> cells_;
    std::vector<Incidence> bnd_;
    std::vector<Incidence> cob_;
    std::vector<std::unordered_map<Coord, std::uint32_t, CoordHash>> lookup_;
};

struct LatticeOptions {
    Cellulation cellulation = Cellulation::Primal;
    std::uint8_t e_axes = 0;  // 0 means the last axis
};

CellComplex build_lattice(int n, int L, Background bg, LatticeOptions opts = {});

enum class HoleType : std::uint8_t { E, M };

// Hole interior is the open box (lo, hi) in lattice units.
struct HoleBox {
    Coord lo{};
    Coord hi{};
};

struct FractalSpec {
    int n = 3;
    int p = 3;
    int q = 1;
    int level = 1;
    int unit = 1;
    Background background = Background::OpenCube;
    HoleType uniform = HoleType::M;
    std::vector<HoleType> assignment;  // per hole id; empty means uniform
    int i = 1;
    Cellulation cellulation = Cellulation::Primal;
    std::uint8_t e_axes = 0;

    int side() const;
    void validate() const;
};

// Centered q-blocks of every occupied p-block, in depth-first order.
std::vector<HoleBox> fractal_holes(int n, int p, int q, int level, int unit);

CellComplex punch_holes(const CellComplex& base, std::span<const HoleBox> boxes, std::span<const HoleType> types);
CellComplex punch_fractal(const CellComplex& base, const FractalSpec& spec);
// Lattice, holes, and for the sphere background the final collapse.
CellComplex build_fractal(const FractalSpec& spec);

CellComplex dual(const CellComplex& c);
CellComplex quotient_to_point(const CellComplex& c, const LabelSet& labels);

// Sparse check of boundary[k-1] * boundary[k] = 0 for every k.
bool boundary_squared_zero(const CellComplex& c);

void write_complex(std::ostream& os, const CellComplex& c);
CellComplex read_complex(std::istream& is);

}  // namespace fcss
