#include "kbmf/data_io.hpp"

#include "kbmf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kbmf {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

SyntheticInstance generate_synthetic_with_factors(std::size_t n, std::size_t m, std::size_t kappa,
                                                  double sigma_pct, double noise_pct,
                                                  std::uint64_t seed) {
    if (kappa < 1) throw std::invalid_argument("generate_synthetic: kappa must be positive");
    if (sigma_pct < 0 || sigma_pct >= 100)
        throw std::invalid_argument("generate_synthetic: sigma_pct must be in [0, 100)");
    double p = 1.0 - std::sqrt(1.0 - std::pow(sigma_pct / 100.0, 1.0 / static_cast<double>(kappa)));

    Factorisation planted(n, m, kappa);
    CounterRng rng(seed);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < kappa; ++l)
            if (!rng.bernoulli(p)) planted.a_col(l).set(i);
    for (std::size_t l = 0; l < kappa; ++l)
        for (std::size_t j = 0; j < m; ++j)
            if (!rng.bernoulli(p)) planted.b_row(l).set(j);

    BinaryMatrix x = boolean_product(planted);
    if (noise_pct > 0) {
        double q = noise_pct / 100.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (rng.bernoulli(q)) x.set(i, j, x.is_one(i, j) ? Cell::Zero : Cell::One);
    }
    return {std::move(x), std::move(planted)};
}

BinaryMatrix generate_synthetic(std::size_t n, std::size_t m, std::size_t kappa, double sigma_pct,
                                double noise_pct, std::uint64_t seed) {
    return generate_synthetic_with_factors(n, m, kappa, sigma_pct, noise_pct, seed).x;
}

BinaryMatrix apply_mask(const BinaryMatrix& x, double missing_pct, std::uint64_t seed) {
    if (missing_pct < 0 || missing_pct >= 100)
        throw std::invalid_argument("apply_mask: missing_pct must be in [0, 100)");
    const std::size_t cells = x.rows() * x.cols();
    const auto hide = static_cast<std::size_t>(missing_pct * static_cast<double>(cells) / 100.0);
    std::vector<std::size_t> idx(cells);
    for (std::size_t c = 0; c < cells; ++c) idx[c] = c;
    CounterRng rng(seed, /*stream=*/0x6d61736bULL);
    for (std::size_t c = 0; c < hide; ++c)
        std::swap(idx[c], idx[c + rng.next_below(cells - c)]);
    BinaryMatrix masked = x;
    for (std::size_t c = 0; c < hide; ++c)
        masked.set(idx[c] / x.cols(), idx[c] % x.cols(), Cell::Missing);
    return masked;
}

WeightedBinaryMatrix build_tight_instance(std::size_t k) {
    if (k < 2) throw std::invalid_argument("build_tight_instance: k must be at least 2");
    const bool odd = k % 2 == 1;
    const std::size_t ke = odd ? k + 1 : k;
    const std::size_t t = ke / 2 - 1;
    const std::size_t size = 4 * t + 3;

    // Group offsets for block pattern [t, 1, t, 1, t, 1, t].
    const std::size_t g1 = 0, g2 = t, g3 = t + 1, g4 = 2 * t + 1, g5 = 2 * t + 2, g6 = 3 * t + 2,
                      g7 = 3 * t + 3;

    std::vector<std::vector<int>> cells(size, std::vector<int>(size, 0));
    auto ident = [&](std::size_t r0, std::size_t c0, bool reverted) {
        for (std::size_t d = 0; d < t; ++d)
            cells[r0 + d][c0 + (reverted ? t - 1 - d : d)] = 1;
    };
    auto ones_block = [&](std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) {
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < w; ++j) cells[r0 + i][c0 + j] = 1;
    };

    ident(g1, g1, false);            // I_t
    ones_block(g1, g4, t, 1);        // column of ones
    ident(g1, g5, true);             // reverted identity
    cells[g2][g2] = 1;
    ones_block(g2, g3, 1, t);
    cells[g2][g4] = 1;
    ones_block(g3, g2, t, 1);
    ones_block(g3, g3, t, t);        // J_t
    ones_block(g3, g4, t, 1);
    ident(g3, g7, true);
    ones_block(g4, g1, 1, t);
    cells[g4][g2] = 1;
    ones_block(g4, g3, 1, t);
    ones_block(g4, g5, 1, t);
    cells[g4][g6] = 1;
    ones_block(g4, g7, 1, t);
    ident(g5, g1, true);
    ones_block(g5, g4, t, 1);
    ones_block(g5, g5, t, t);
    ones_block(g5, g6, t, 1);
    cells[g6][g4] = 1;
    ones_block(g6, g5, 1, t);
    cells[g6][g6] = 1;
    ident(g7, g3, true);
    ones_block(g7, g4, t, 1);
    ident(g7, g7, false);

    std::vector<std::int64_t> weights(size, static_cast<std::int64_t>(ke) + 1);
    weights[g4] = 1;

    if (odd) {
        cells.erase(cells.begin());
        for (auto& row : cells) row.erase(row.begin());
        weights.erase(weights.begin());
    }

    BinaryMatrix core = BinaryMatrix::from_rows(cells);
    const std::size_t dim = core.rows();

    WeightedBinaryMatrix w;
    w.core = core;
    w.row_weights = weights;
    w.col_weights = weights;
    // Maps describe the full matrix X(k) in which row/column i appears
    // weights[i] times.
    std::int64_t total = 0;
    for (auto v : weights) total += v;
    w.orig_rows = static_cast<std::size_t>(total);
    w.orig_cols = static_cast<std::size_t>(total);
    w.row_map.reserve(w.orig_rows);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::int64_t c = 0; c < weights[r]; ++c) w.row_map.push_back(r);
    w.col_map = w.row_map;
    w.dropped_row_missing.assign(w.orig_rows, BitVec());
    w.dropped_col_missing.assign(w.orig_cols, BitVec());
    return w;
}

BinaryMatrix binarize_categorical(const std::vector<std::vector<std::string>>& table,
                                  const std::vector<ColumnSpec>& spec,
                                  const std::string& missing_marker) {
    if (table.empty()) throw std::invalid_argument("binarize: empty table");
    const std::size_t nrows = table.size(), ncols = spec.size();
    for (const auto& row : table)
        if (row.size() != ncols) throw std::invalid_argument("binarize: ragged table");

    // Cell::Missing marks every derived column of a missing source value.
    std::vector<std::vector<Cell>> out_cols;
    for (std::size_t c = 0; c < ncols; ++c) {
        std::vector<std::string> values(nrows);
        bool any_known = false;
        for (std::size_t r = 0; r < nrows; ++r) {
            values[r] = trim(table[r][c]);
            if (values[r] != missing_marker) any_known = true;
        }
        if (!any_known)
            throw std::invalid_argument("binarize: column '" + spec[c].name + "' has no values");

        switch (spec[c].kind) {
            case ColumnKind::Binary: {
                std::vector<Cell> col(nrows);
                for (std::size_t r = 0; r < nrows; ++r) {
                    if (values[r] == missing_marker)
                        col[r] = Cell::Missing;
                    else if (values[r] == "0")
                        col[r] = Cell::Zero;
                    else if (values[r] == "1")
                        col[r] = Cell::One;
                    else
                        throw std::invalid_argument("binarize: non-binary value '" + values[r] +
                                                    "' in column '" + spec[c].name + "'");
                }
                out_cols.push_back(std::move(col));
                break;
            }
            case ColumnKind::Categorical: {
                std::vector<std::string> options;
                for (std::size_t r = 0; r < nrows; ++r)
                    if (values[r] != missing_marker &&
                        std::find(options.begin(), options.end(), values[r]) == options.end())
                        options.push_back(values[r]);
                for (const auto& opt : options) {
                    std::vector<Cell> col(nrows);
                    for (std::size_t r = 0; r < nrows; ++r) {
                        if (values[r] == missing_marker)
                            col[r] = Cell::Missing;
                        else
                            col[r] = values[r] == opt ? Cell::One : Cell::Zero;
                    }
                    out_cols.push_back(std::move(col));
                }
                break;
            }
            case ColumnKind::Numeric: {
                std::vector<double> nums;
                for (std::size_t r = 0; r < nrows; ++r) {
                    if (values[r] == missing_marker) continue;
                    double v = std::stod(values[r]);
                    if (!std::isfinite(v))
                        throw std::invalid_argument("binarize: non-finite value in column '" +
                                                    spec[c].name + "'");
                    nums.push_back(v);
                }
                std::sort(nums.begin(), nums.end());
                // Median over non-missing values.
                double med = nums.size() % 2 == 1
                                 ? nums[nums.size() / 2]
                                 : 0.5 * (nums[nums.size() / 2 - 1] + nums[nums.size() / 2]);
                std::vector<Cell> le(nrows), gt(nrows);
                for (std::size_t r = 0; r < nrows; ++r) {
                    if (values[r] == missing_marker) {
                        le[r] = gt[r] = Cell::Missing;
                    } else {
                        double v = std::stod(values[r]);
                        le[r] = v <= med ? Cell::One : Cell::Zero;
                        gt[r] = v > med ? Cell::One : Cell::Zero;
                    }
                }
                out_cols.push_back(std::move(le));
                out_cols.push_back(std::move(gt));
                break;
            }
        }
    }

    BinaryMatrix x(nrows, out_cols.size());
    for (std::size_t j = 0; j < out_cols.size(); ++j)
        for (std::size_t i = 0; i < nrows; ++i) x.set(i, j, out_cols[j][i]);
    return x;
}

MatrixFile read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_matrix: cannot open " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("read_matrix: empty file " + path);
    std::istringstream hs(header);
    std::size_t n = 0, m = 0;
    std::string tag;
    if (!(hs >> n >> m) || n == 0 || m == 0)
        throw std::runtime_error("read_matrix: malformed header in " + path);
    bool weighted = static_cast<bool>(hs >> tag);
    if (weighted && tag != "weighted")
        throw std::runtime_error("read_matrix: unexpected header tag '" + tag + "'");

    MatrixFile file{BinaryMatrix(n, m), std::nullopt, std::nullopt};
    for (std::size_t i = 0; i < n; ++i) {
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error("read_matrix: truncated matrix body");
        line = trim(line);
        if (line.size() != m)
            throw std::runtime_error("read_matrix: row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < m; ++j) {
            switch (line[j]) {
                case '0': file.x.set(i, j, Cell::Zero); break;
                case '1': file.x.set(i, j, Cell::One); break;
                case '?': file.x.set(i, j, Cell::Missing); break;
                default:
                    throw std::runtime_error(std::string("read_matrix: illegal character '") +
                                             line[j] + "'");
            }
        }
    }
    if (weighted) {
        auto read_weights = [&](std::size_t count) {
            std::string line;
            if (!std::getline(in, line)) throw std::runtime_error("read_matrix: missing weights");
            std::istringstream ws(line);
            std::vector<std::int64_t> w(count);
            for (std::size_t c = 0; c < count; ++c)
                if (!(ws >> w[c]) || w[c] < 1)
                    throw std::runtime_error("read_matrix: malformed weight line");
            return w;
        };
        file.row_weights = read_weights(n);
        file.col_weights = read_weights(m);
    }
    return file;
}

namespace {

void write_body(std::ofstream& out, const BinaryMatrix& x) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
        std::string line(x.cols(), '0');
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (x.is_one(i, j))
                line[j] = '1';
            else if (x.is_missing(i, j))
                line[j] = '?';
        }
        out << line << '\n';
    }
}

}  // namespace

void write_matrix(const std::string& path, const BinaryMatrix& x) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_matrix: cannot open " + path);
    out << x.rows() << ' ' << x.cols() << '\n';
    write_body(out, x);
}

void write_matrix(const std::string& path, const WeightedBinaryMatrix& w) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_matrix: cannot open " + path);
    out << w.core.rows() << ' ' << w.core.cols() << " weighted\n";
    write_body(out, w.core);
    for (std::size_t i = 0; i < w.row_weights.size(); ++i)
        out << w.row_weights[i] << (i + 1 < w.row_weights.size() ? ' ' : '\n');
    for (std::size_t j = 0; j < w.col_weights.size(); ++j)
        out << w.col_weights[j] << (j + 1 < w.col_weights.size() ? ' ' : '\n');
}

std::vector<ColumnSpec> read_column_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_column_spec: cannot open " + path);
    std::vector<ColumnSpec> spec;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        ColumnSpec c;
        std::string kind;
        if (!(ls >> c.name >> kind))
            throw std::runtime_error("read_column_spec: malformed line '" + line + "'");
        if (kind == "binary")
            c.kind = ColumnKind::Binary;
        else if (kind == "categorical")
            c.kind = ColumnKind::Categorical;
        else if (kind == "numeric")
            c.kind = ColumnKind::Numeric;
        else
            throw std::runtime_error("read_column_spec: unknown kind '" + kind + "'");
        spec.push_back(std::move(c));
    }
    return spec;
}

std::vector<std::vector<std::string>> read_delimited(const std::string& path, char delim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_delimited: cannot open " + path);
    std::vector<std::vector<std::string>> table;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, delim)) row.push_back(trim(cell));
        table.push_back(std::move(row));
    }
    return table;
}

}  // namespace kbmf
