#pragma once

#include <cassert>

#include <Eigen/Dense>

namespace stmg {

/// Space-time coefficient vector indexed by (time step n, local DG index l,
/// space node r), stored time-major with flat index (n*n_loc + l)*n_x + r.
/// One time step is therefore an n_x x n_loc column-major matrix slice.
class BlockVector {
 public:
  BlockVector() = default;
  BlockVector(Eigen::Index n_t, Eigen::Index n_x, Eigen::Index n_loc)
      : n_t_(n_t), n_x_(n_x), n_loc_(n_loc),
        data_(Eigen::VectorXd::Zero(n_t * n_x * n_loc)) {}

  Eigen::Index n_t() const { return n_t_; }
  Eigen::Index n_x() const { return n_x_; }
  Eigen::Index n_loc() const { return n_loc_; }
  Eigen::Index size() const { return data_.size(); }

  double& operator()(Eigen::Index n, Eigen::Index l, Eigen::Index r) {
    return data_[(n * n_loc_ + l) * n_x_ + r];
  }
  double operator()(Eigen::Index n, Eigen::Index l, Eigen::Index r) const {
    return data_[(n * n_loc_ + l) * n_x_ + r];
  }

  /// Time step n as an n_x x n_loc matrix (column l = DG component l).
  Eigen::Map<Eigen::MatrixXd> step(Eigen::Index n) {
    assert(n >= 0 && n < n_t_);
    return {data_.data() + n * n_x_ * n_loc_, n_x_, n_loc_};
  }
  Eigen::Map<const Eigen::MatrixXd> step(Eigen::Index n) const {
    assert(n >= 0 && n < n_t_);
    return {data_.data() + n * n_x_ * n_loc_, n_x_, n_loc_};
  }

  Eigen::VectorXd& flat() { return data_; }
  const Eigen::VectorXd& flat() const { return data_; }

  bool same_shape(const BlockVector& other) const {
    return n_t_ == other.n_t_ && n_x_ == other.n_x_ && n_loc_ == other.n_loc_;
  }

  void setZero() { data_.setZero(); }

  /// l2 norm with a thread-count independent summation order: one partial
  /// sum per time step, combined in step order.
  double norm() const;

 private:
  Eigen::Index n_t_ = 0, n_x_ = 0, n_loc_ = 0;
  Eigen::VectorXd data_;
};

}  // namespace stmg
