#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tmod {

// Dense matrix over F2, rows bit-packed into 64-bit words.
class F2Mat {
public:
    F2Mat() = default;
    F2Mat(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int get(int r, int c) const;
    void set(int r, int c, int v);
    void add_row_into(int src, int dst);  // dst ^= src

    int rank() const;

    // column vector lies in the span of this matrix's columns
    bool column_in_span(const std::vector<int>& col) const;

    std::string to_string() const;

    bool operator==(const F2Mat&) const = default;

private:
    int rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<uint64_t> bits_;
};

}  // namespace tmod
