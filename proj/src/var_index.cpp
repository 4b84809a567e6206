#include "srp/var_index.hpp"

#include <stdexcept>

namespace srp {

VarIndex::BaseVar VarIndex::describe(int id) const {
    if (id < 0 || id >= base_count())
        throw std::out_of_range("VarIndex::describe: id " + std::to_string(id) +
                                " outside [0, " + std::to_string(base_count()) + ")");
    const int block = m_ * k_ * stops_;
    if (id < block) {
        return {'X', id / (k_ * stops_), id / stops_ % k_, id % stops_};
    }
    if (id < 2 * block) {
        int r = id - block;
        return {'Y', r / (k_ * stops_), r / stops_ % k_, r % stops_};
    }
    return {'Z', -1, id - 2 * block, -1};
}

std::string VarIndex::name(int id) const {
    BaseVar v = describe(id);
    if (v.role == 'Z') return "Z_" + std::to_string(v.j + 1);
    return std::string(1, v.role) + "_" + std::to_string(v.i + 1) + "_" + std::to_string(v.j + 1) +
           "_" + std::to_string(v.p + 1);
}

}  // namespace srp
