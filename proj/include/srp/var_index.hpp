#pragma once

#include <string>

namespace srp {

// Flat ids for the core decision variables of an instance with m requests,
// k trucks and 2m stops per truck:
//   X(i,j,p) = 1  iff the source of request i is visited at stop p of truck j
//   Y(i,j,p) = 1  iff its destination is visited at stop p of truck j
//   Z(j)     = 1  iff truck j is used
// Layout: the X block, then the Y block, then Z -- a bijection that is
// stable for fixed (m, k). Builders append their auxiliary variables after
// base_count(). All arguments are 0-based; printed names are 1-based.
class VarIndex {
public:
    VarIndex(int m, int k) : m_(m), k_(k), stops_(2 * m) {}

    int request_count() const { return m_; }
    int truck_count() const { return k_; }
    int stop_count() const { return stops_; }

    int x(int i, int j, int p) const { return (i * k_ + j) * stops_ + p; }
    int y(int i, int j, int p) const { return m_ * k_ * stops_ + (i * k_ + j) * stops_ + p; }
    int z(int j) const { return 2 * m_ * k_ * stops_ + j; }

    int base_count() const { return 2 * m_ * k_ * stops_ + k_; }

    struct BaseVar {
        char role;  // 'X', 'Y' or 'Z'
        int i = -1; // request (X/Y only)
        int j = 0;  // truck
        int p = -1; // stop (X/Y only)
    };
    BaseVar describe(int id) const;
    std::string name(int id) const;

private:
    int m_ = 0;
    int k_ = 0;
    int stops_ = 0;
};

}  // namespace srp
