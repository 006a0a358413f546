#pragma once

#include <utility>

namespace swsync {

/// Classical fourth-order Runge-Kutta stepper for autonomous systems x' = f(x).
///
/// State is any Eigen dense object (vector or matrix). The field is called as
/// field(x, dxdt) and must fully overwrite dxdt. Stage buffers are kept as
/// members so repeated steps do not allocate.
template <typename State>
class Rk4Stepper {
public:
    Rk4Stepper() = default;
    explicit Rk4Stepper(const State& shape) { resize_like(shape); }

    template <typename Field>
    void step(Field&& field, State& x, double dt) {
        if (k1_.rows() != x.rows() || k1_.cols() != x.cols()) {
            resize_like(x);
        }
        field(x, k1_);
        tmp_ = x + (dt / 2) * k1_;
        field(tmp_, k2_);
        tmp_ = x + (dt / 2) * k2_;
        field(tmp_, k3_);
        tmp_ = x + dt * k3_;
        field(tmp_, k4_);
        x += (dt / 6) * (k1_ + 2 * k2_ + 2 * k3_ + k4_);
    }

private:
    void resize_like(const State& x) {
        k1_.resizeLike(x);
        k2_.resizeLike(x);
        k3_.resizeLike(x);
        k4_.resizeLike(x);
        tmp_.resizeLike(x);
    }

    State k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace swsync
