#include "tmod/f2mat.hpp"

#include <stdexcept>

namespace tmod {

F2Mat::F2Mat(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(static_cast<size_t>(rows) * words_, 0) {}

int F2Mat::get(int r, int c) const {
    return (bits_[static_cast<size_t>(r) * words_ + c / 64] >> (c % 64)) & 1;
}

void F2Mat::set(int r, int c, int v) {
    uint64_t& w = bits_[static_cast<size_t>(r) * words_ + c / 64];
    uint64_t m = 1ULL << (c % 64);
    if (v & 1)
        w |= m;
    else
        w &= ~m;
}

void F2Mat::add_row_into(int src, int dst) {
    for (int w = 0; w < words_; ++w)
        bits_[static_cast<size_t>(dst) * words_ + w] ^= bits_[static_cast<size_t>(src) * words_ + w];
}

int F2Mat::rank() const {
    std::vector<uint64_t> work(bits_);
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
        int w = c / 64;
        uint64_t m = 1ULL << (c % 64);
        int pivot = -1;
        for (int r = rank; r < rows_; ++r) {
            if (work[static_cast<size_t>(r) * words_ + w] & m) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        for (int j = 0; j < words_; ++j)
            std::swap(work[static_cast<size_t>(pivot) * words_ + j], work[static_cast<size_t>(rank) * words_ + j]);
        for (int r = 0; r < rows_; ++r) {
            if (r != rank && (work[static_cast<size_t>(r) * words_ + w] & m)) {
                for (int j = 0; j < words_; ++j)
                    work[static_cast<size_t>(r) * words_ + j] ^= work[static_cast<size_t>(rank) * words_ + j];
            }
        }
        ++rank;
    }
    return rank;
}

bool F2Mat::column_in_span(const std::vector<int>& col) const {
    if (static_cast<int>(col.size()) != rows_) throw std::invalid_argument("column_in_span: size mismatch");
    F2Mat aug(rows_, cols_ + 1);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) aug.set(r, c, get(r, c));
        aug.set(r, cols_, col[r] & 1);
    }
    return aug.rank() == rank();
}

std::string F2Mat::to_string() const {
    std::string s;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
        s += '\n';
    }
    return s;
}

}  // namespace tmod
