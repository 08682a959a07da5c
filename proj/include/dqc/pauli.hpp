// Copyright 2026 The dqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dqc {

/// An n-qubit Pauli operator i^phase * (sigma_0 (x) ... (x) sigma_{n-1}).
///
/// Each factor is stored as an (x, z) bit pair: I = 00, X = 10, Z = 01 and
/// Y = 11, where the factor is the Y matrix itself rather than XZ.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t n) : xs_(n, 0), zs_(n, 0) {
    }

    /// Parses "[+|-|+i|-i]P..." with P in {I,X,Y,Z,_}. A missing sign means +.
    static PauliString from_str(std::string_view text) {
        std::uint8_t phase = 0;
        std::size_t pos = 0;
        if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
            phase = text[0] == '-' ? 2 : 0;
            pos = 1;
            if (pos < text.size() && text[pos] == 'i') {
                phase = static_cast<std::uint8_t>((phase + 1) & 3);
                pos++;
            }
        }
        PauliString p(text.size() - pos);
        p.phase_ = phase;
        for (std::size_t q = 0; pos < text.size(); pos++, q++) {
            p.set(q, text[pos]);
        }
        return p;
    }

    std::string str() const {
        static constexpr const char *kSigns[4] = {"+", "+i", "-", "-i"};
        std::string out = kSigns[phase_];
        for (std::size_t q = 0; q < size(); q++) {
            out.push_back(at(q));
        }
        return out;
    }

    std::size_t size() const {
        return xs_.size();
    }
    bool x(std::size_t q) const {
        return xs_[q] != 0;
    }
    bool z(std::size_t q) const {
        return zs_[q] != 0;
    }
    std::uint8_t phase() const {
        return phase_;
    }
    void set_phase(std::uint8_t phase) {
        phase_ = phase & 3;
    }
    bool is_hermitian() const {
        return (phase_ & 1) == 0;
    }
    /// True when the operator carries a minus sign (phase == 2).
    bool negative() const {
        return phase_ == 2;
    }

    char at(std::size_t q) const {
        static constexpr char kNames[4] = {'I', 'X', 'Z', 'Y'};
        return kNames[xs_[q] | (zs_[q] << 1)];
    }

    void set(std::size_t q, char p) {
        switch (p) {
            case 'I':
            case '_':
                xs_[q] = 0;
                zs_[q] = 0;
                break;
            case 'X':
                xs_[q] = 1;
                zs_[q] = 0;
                break;
            case 'Y':
                xs_[q] = 1;
                zs_[q] = 1;
                break;
            case 'Z':
                xs_[q] = 0;
                zs_[q] = 1;
                break;
            default:
                throw std::invalid_argument(std::string("bad Pauli character '") + p + "'");
        }
    }

    void set_bits(std::size_t q, bool x, bool z) {
        xs_[q] = x;
        zs_[q] = z;
    }

    std::size_t weight() const {
        std::size_t w = 0;
        for (std::size_t q = 0; q < size(); q++) {
            w += (xs_[q] | zs_[q]) != 0;
        }
        return w;
    }

    bool commutes(const PauliString &other) const {
        check_size(other);
        unsigned parity = 0;
        for (std::size_t q = 0; q < size(); q++) {
            parity ^= (xs_[q] & other.zs_[q]) ^ (zs_[q] & other.xs_[q]);
        }
        return parity == 0;
    }

    /// Operator product this * other, including the i^k scalar.
    PauliString operator*(const PauliString &other) const {
        check_size(other);
        PauliString out(size());
        int phase = phase_ + other.phase_;
        for (std::size_t q = 0; q < size(); q++) {
            phase += product_phase(xs_[q], zs_[q], other.xs_[q], other.zs_[q]);
            out.xs_[q] = xs_[q] ^ other.xs_[q];
            out.zs_[q] = zs_[q] ^ other.zs_[q];
        }
        out.phase_ = static_cast<std::uint8_t>(((phase % 4) + 4) % 4);
        return out;
    }

    /// Same operator without its scalar.
    PauliString unsigned_part() const {
        PauliString out = *this;
        out.phase_ = 0;
        return out;
    }

    /// Embeds this operator at offset into a register of total qubits.
    PauliString embedded(std::size_t total, std::size_t offset) const {
        PauliString out(total);
        out.phase_ = phase_;
        for (std::size_t q = 0; q < size(); q++) {
            out.xs_[offset + q] = xs_[q];
            out.zs_[offset + q] = zs_[q];
        }
        return out;
    }

    bool operator==(const PauliString &other) const = default;

    /// Concatenated x||z bit pattern, used for deterministic tie-breaks.
    std::vector<std::uint8_t> bit_pattern() const {
        std::vector<std::uint8_t> out(xs_);
        out.insert(out.end(), zs_.begin(), zs_.end());
        return out;
    }

    /// Power of i picked up by sigma(x1,z1) * sigma(x2,z2).
    static int product_phase(unsigned x1, unsigned z1, unsigned x2, unsigned z2) {
        if (x1 == 0 && z1 == 0) {
            return 0;
        }
        if (x1 == 1 && z1 == 1) {
            return static_cast<int>(z2) - static_cast<int>(x2);
        }
        if (x1 == 1) {
            return static_cast<int>(z2) * (2 * static_cast<int>(x2) - 1);
        }
        return static_cast<int>(x2) * (1 - 2 * static_cast<int>(z2));
    }

   private:
    void check_size(const PauliString &other) const {
        if (other.size() != size()) {
            throw std::invalid_argument("Pauli strings of different length");
        }
    }

    std::vector<std::uint8_t> xs_;
    std::vector<std::uint8_t> zs_;
    std::uint8_t phase_ = 0;
};

inline std::ostream &operator<<(std::ostream &out, const PauliString &p) {
    return out << p.str();
}

/// An [[n, k]] stabilizer code with chosen logical operators.
struct StabilizerCode {
    std::string name;
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<PauliString> generators;
    std::vector<PauliString> logical_z;
    std::vector<PauliString> logical_x;

    /// Generators followed by logical Z operators; the operators the distributed encoder measures.
    std::vector<PauliString> encoding_operators() const {
        std::vector<PauliString> ops = generators;
        ops.insert(ops.end(), logical_z.begin(), logical_z.end());
        return ops;
    }
};

inline StabilizerCode steane_code() {
    StabilizerCode code;
    code.name = "steane";
    code.n = 7;
    code.k = 1;
    for (const char *g : {"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"}) {
        code.generators.push_back(PauliString::from_str(g));
    }
    code.logical_z.push_back(PauliString::from_str("ZZZZZZZ"));
    code.logical_x.push_back(PauliString::from_str("XXXXXXX"));
    return code;
}

namespace gf2 {

using Row = std::vector<std::uint8_t>;

/// Symplectic row x||z of a Pauli string.
inline Row symplectic_row(const PauliString &p) {
    return p.bit_pattern();
}

/// Rank of a list of rows over GF(2).
inline std::size_t rank(std::vector<Row> rows) {
    std::size_t r = 0;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); c++) {
        std::size_t pivot = r;
        while (pivot < rows.size() && !rows[pivot][c]) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); i++) {
            if (i != r && rows[i][c]) {
                for (std::size_t j = 0; j < cols; j++) {
                    rows[i][j] ^= rows[r][j];
                }
            }
        }
        r++;
    }
    return r;
}

/// Solves A v = b over GF(2). Free variables are set to zero.
inline std::optional<Row> solve(std::vector<Row> a, Row b) {
    std::size_t rows = a.size();
    std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; c++) {
        std::size_t pivot = r;
        while (pivot < rows && !a[pivot][c]) {
            pivot++;
        }
        if (pivot == rows) {
            continue;
        }
        std::swap(a[r], a[pivot]);
        std::swap(b[r], b[pivot]);
        for (std::size_t i = 0; i < rows; i++) {
            if (i != r && a[i][c]) {
                for (std::size_t j = 0; j < cols; j++) {
                    a[i][j] ^= a[r][j];
                }
                b[i] ^= b[r];
            }
        }
        pivot_cols.push_back(c);
        r++;
    }
    for (std::size_t i = r; i < rows; i++) {
        if (b[i]) {
            return std::nullopt;
        }
    }
    Row v(cols, 0);
    for (std::size_t i = 0; i < r; i++) {
        v[pivot_cols[i]] = b[i];
    }
    return v;
}

}  // namespace gf2

/// Checks every structural requirement of a stabilizer code.
///
/// Returns a list of human-readable violations; an empty list means valid.
inline std::vector<std::string> validate_code(const StabilizerCode &code) {
    std::vector<std::string> bad;
    auto all_sized = [&](const std::vector<PauliString> &ops, const char *what) {
        for (const auto &op : ops) {
            if (op.size() != code.n) {
                bad.push_back(std::string(what) + " " + op.str() + " has wrong length");
                return false;
            }
        }
        return true;
    };
    if (code.k > code.n) {
        bad.push_back("k exceeds n");
        return bad;
    }
    if (code.generators.size() != code.n - code.k) {
        bad.push_back("expected " + std::to_string(code.n - code.k) + " generators, got " +
                      std::to_string(code.generators.size()));
    }
    if (code.logical_z.size() != code.k || code.logical_x.size() != code.k) {
        bad.push_back("expected " + std::to_string(code.k) + " logical Z and X operators");
    }
    if (!all_sized(code.generators, "generator") || !all_sized(code.logical_z, "logical Z") ||
        !all_sized(code.logical_x, "logical X")) {
        return bad;
    }
    for (const auto &g : code.generators) {
        if (g.phase() != 0) {
            bad.push_back("generator " + g.str() + " does not have phase +1");
        }
    }
    for (std::size_t i = 0; i < code.generators.size(); i++) {
        for (std::size_t j = i + 1; j < code.generators.size(); j++) {
            if (!code.generators[i].commutes(code.generators[j])) {
                bad.push_back("generators " + std::to_string(i) + " and " + std::to_string(j) +
                              " anticommute");
            }
        }
        for (std::size_t j = 0; j < code.logical_z.size(); j++) {
            if (!code.generators[i].commutes(code.logical_z[j])) {
                bad.push_back("generator " + std::to_string(i) + " anticommutes with Z_L[" +
                              std::to_string(j) + "]");
            }
        }
        for (std::size_t j = 0; j < code.logical_x.size(); j++) {
            if (!code.generators[i].commutes(code.logical_x[j])) {
                bad.push_back("generator " + std::to_string(i) + " anticommutes with X_L[" +
                              std::to_string(j) + "]");
            }
        }
    }
    std::vector<gf2::Row> rows;
    for (const auto &g : code.generators) {
        rows.push_back(gf2::symplectic_row(g));
    }
    if (gf2::rank(rows) != code.generators.size()) {
        bad.push_back("generators are not independent over GF(2)");
    }
    for (std::size_t i = 0; i < code.logical_z.size() && i < code.logical_x.size(); i++) {
        for (std::size_t j = 0; j < code.logical_z.size() && j < code.logical_x.size(); j++) {
            bool commute = code.logical_x[i].commutes(code.logical_z[j]);
            if (i == j && commute) {
                bad.push_back("X_L[" + std::to_string(i) + "] commutes with Z_L[" + std::to_string(j) + "]");
            }
            if (i != j && !commute) {
                bad.push_back("X_L[" + std::to_string(i) + "] anticommutes with Z_L[" + std::to_string(j) + "]");
            }
        }
        for (std::size_t j = 0; j < code.logical_z.size(); j++) {
            if (i != j && !code.logical_z[i].commutes(code.logical_z[j])) {
                bad.push_back("logical Z operators anticommute");
            }
            if (i != j && j < code.logical_x.size() && !code.logical_x[i].commutes(code.logical_x[j])) {
                bad.push_back("logical X operators anticommute");
            }
        }
    }
    return bad;
}

/// Syndrome-indexed recovery table for a list of operators.
///
/// Bit i of a syndrome is 1 when the correction must anticommute with
/// operator i. Entries are minimum weight with the lexicographically smallest
/// x||z pattern, found by exhaustive search while the candidate count stays
/// under the budget. Entries beyond the budget use a GF(2) solution.
class CorrectionTable {
   public:
    static constexpr std::size_t kCandidateBudget = 200000;

    explicit CorrectionTable(std::vector<PauliString> ops) : ops_(std::move(ops)) {
        if (ops_.empty()) {
            throw std::invalid_argument("CorrectionTable needs at least one operator");
        }
        n_ = ops_[0].size();
        if (ops_.size() > 20) {
            throw std::invalid_argument("CorrectionTable supports at most 20 operators");
        }
        for (const auto &op : ops_) {
            if (op.size() != n_) {
                throw std::invalid_argument("CorrectionTable operators differ in length");
            }
        }
        table_.resize(std::size_t{1} << ops_.size());
        enumerate();
    }

    const std::vector<PauliString> &operators() const {
        return ops_;
    }

    /// Correction for a syndrome given as one bit per operator.
    PauliString lookup(std::span<const std::uint8_t> syndrome) const {
        if (syndrome.size() != ops_.size()) {
            throw std::invalid_argument("syndrome length does not match operator count");
        }
        std::size_t key = 0;
        for (std::size_t i = 0; i < syndrome.size(); i++) {
            key |= static_cast<std::size_t>(syndrome[i] & 1) << i;
        }
        const auto &entry = table_[key];
        if (entry.has_value()) {
            return *entry;
        }
        auto solved = solve_linear(syndrome);
        if (!solved.has_value()) {
            throw std::invalid_argument("syndrome is inconsistent with the operator set");
        }
        return *solved;
    }

    /// Syndrome bits of a Pauli error against the operator list.
    std::vector<std::uint8_t> syndrome_of(const PauliString &p) const {
        std::vector<std::uint8_t> out;
        for (const auto &op : ops_) {
            out.push_back(op.commutes(p) ? 0 : 1);
        }
        return out;
    }

    std::size_t max_exhaustive_weight() const {
        return max_weight_;
    }

   private:
    void enumerate() {
        // Weight-0 entry.
        table_[0] = PauliString(n_);
        std::size_t spent = 1;
        for (std::size_t w = 1; w <= n_; w++) {
            std::size_t count = binomial(n_, w);
            for (std::size_t i = 0; i < w; i++) {
                count *= 3;
            }
            if (spent + count > kCandidateBudget) {
                break;
            }
            spent += count;
            max_weight_ = w;
            std::vector<std::size_t> support(w);
            for (std::size_t i = 0; i < w; i++) {
                support[i] = i;
            }
            while (true) {
                visit_support(support);
                if (!next_combination(support)) {
                    break;
                }
            }
        }
    }

    void visit_support(const std::vector<std::size_t> &support) {
        std::size_t w = support.size();
        std::size_t total = 1;
        for (std::size_t i = 0; i < w; i++) {
            total *= 3;
        }
        PauliString p(n_);
        for (std::size_t code = 0; code < total; code++) {
            std::size_t c = code;
            for (std::size_t i = 0; i < w; i++) {
                static constexpr char kOps[3] = {'X', 'Y', 'Z'};
                p.set(support[i], kOps[c % 3]);
                c /= 3;
            }
            std::size_t key = 0;
            for (std::size_t i = 0; i < ops_.size(); i++) {
                if (!ops_[i].commutes(p)) {
                    key |= std::size_t{1} << i;
                }
            }
            auto &slot = table_[key];
            if (!slot.has_value()) {
                slot = p;
            } else if (slot->weight() == w && p.bit_pattern() < slot->bit_pattern()) {
                slot = p;
            }
        }
    }

    std::optional<PauliString> solve_linear(std::span<const std::uint8_t> syndrome) const {
        // Unknown v = x||z; anticommutation with op is x.op_z + z.op_x.
        std::vector<gf2::Row> a;
        gf2::Row b;
        for (std::size_t i = 0; i < ops_.size(); i++) {
            gf2::Row row(2 * n_, 0);
            for (std::size_t q = 0; q < n_; q++) {
                row[q] = ops_[i].z(q);
                row[n_ + q] = ops_[i].x(q);
            }
            a.push_back(row);
            b.push_back(syndrome[i] & 1);
        }
        auto v = gf2::solve(a, b);
        if (!v.has_value()) {
            return std::nullopt;
        }
        PauliString p(n_);
        for (std::size_t q = 0; q < n_; q++) {
            p.set_bits(q, (*v)[q], (*v)[n_ + q]);
        }
        return p;
    }

    static std::size_t binomial(std::size_t n, std::size_t k) {
        std::size_t r = 1;
        for (std::size_t i = 1; i <= k; i++) {
            r = r * (n - k + i) / i;
        }
        return r;
    }

    bool next_combination(std::vector<std::size_t> &c) const {
        std::size_t w = c.size();
        for (std::size_t i = w; i-- > 0;) {
            if (c[i] < n_ - w + i) {
                c[i]++;
                for (std::size_t j = i + 1; j < w; j++) {
                    c[j] = c[j - 1] + 1;
                }
                return true;
            }
        }
        return false;
    }

    std::vector<PauliString> ops_;
    std::size_t n_ = 0;
    std::size_t max_weight_ = 0;
    std::vector<std::optional<PauliString>> table_;
};

/// Minimum-weight Pauli whose commutation pattern with generators then
/// logical Z operators equals the syndrome.
inline PauliString find_correction(const StabilizerCode &code, std::span<const std::uint8_t> syndrome) {
    auto ops = code.encoding_operators();
    if (syndrome.size() != ops.size()) {
        throw std::invalid_argument("syndrome length must equal n");
    }
    return CorrectionTable(std::move(ops)).lookup(syndrome);
}

/// If p equals a product of generators up to a scalar, returns that scalar
/// as a power of i (p = i^s * product). Otherwise returns nullopt.
inline std::optional<std::uint8_t> group_membership_phase(const std::vector<PauliString> &generators,
                                                          const PauliString &p) {
    if (generators.empty()) {
        if (p.weight() == 0) {
            return p.phase();
        }
        return std::nullopt;
    }
    std::size_t n = p.size();
    std::size_t m = generators.size();
    // Columns are generators; rows are the 2n symplectic coordinates.
    std::vector<gf2::Row> a(2 * n, gf2::Row(m, 0));
    for (std::size_t j = 0; j < m; j++) {
        auto row = gf2::symplectic_row(generators[j]);
        for (std::size_t i = 0; i < 2 * n; i++) {
            a[i][j] = row[i];
        }
    }
    auto coeffs = gf2::solve(a, gf2::symplectic_row(p));
    if (!coeffs.has_value()) {
        return std::nullopt;
    }
    PauliString prod(n);
    for (std::size_t j = 0; j < m; j++) {
        if ((*coeffs)[j]) {
            prod = prod * generators[j];
        }
    }
    return static_cast<std::uint8_t>((p.phase() - prod.phase() + 4) & 3);
}

}  // namespace dqc
