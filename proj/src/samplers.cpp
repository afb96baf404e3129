#include "parabolic/isotropy.hpp"

namespace parabolic {

namespace {

QMatrix random_real(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_rational(rng);
  return m;
}

QMatrix random_quaternionic(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  QMatrix m(2 * rows, 2 * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      QMatrix q(2, 2);
      for (int u = 0; u < 4; ++u) q += Gauss(random_rational(rng)) * quaternion_unit(u);
      m.set_block(2 * r, 2 * c, q);
    }
  return m;
}

template <class Draw>
QMatrix invertible(Draw draw) {
  for (;;) {
    QMatrix m = draw();
    if (inverse(m)) return m;
  }
}

GroupElement with_inverse(QMatrix g) {
  auto inv = inverse(g);
  if (!inv) throw std::logic_error("sampled group element is singular");
  return {std::move(g), std::move(*inv)};
}

}  // namespace

Rational random_rational(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, 3);
  int a = num(rng);
  return frac(a, den(rng));
}

AlgebraElement random_element(const AlgebraHandle& algebra, int degree, std::mt19937_64& rng, int bound) {
  std::vector<Rational> c(algebra->dim(degree));
  for (auto& v : c) v = random_rational(rng, bound);
  return AlgebraElement::from_coordinates(algebra, degree, c);
}

AlgebraElement random_element(const AlgebraHandle& algebra, int lo, int hi, std::mt19937_64& rng, int bound) {
  auto out = AlgebraElement::zero(algebra);
  for (int d = lo; d <= hi; ++d) out += random_element(algebra, d, rng, bound);
  return out;
}

GroupElement random_parabolic(const AlgebraHandle& algebra, std::mt19937_64& rng) {
  std::size_t n = algebra->ambient_size();
  switch (algebra->family()) {
    case Family::grassmannian:
    case Family::sl2: {
      std::size_t a = algebra->block_partition()[0], b = algebra->block_partition()[1];
      QMatrix g(n, n);
      g.set_block(0, 0, invertible([&] { return random_real(a, a, rng); }));
      g.set_block(a, a, invertible([&] { return random_real(b, b, rng); }));
      g.set_block(0, a, random_real(a, b, rng));
      return with_inverse(std::move(g));
    }
    case Family::quaternionic: {
      std::size_t b = n / 2 - 1;
      QMatrix g(n, n);
      g.set_block(0, 0, invertible([&] { return random_quaternionic(1, 1, rng); }));
      g.set_block(2, 2, invertible([&] { return random_quaternionic(b, b, rng); }));
      g.set_block(0, 2, random_quaternionic(1, b, rng));
      return with_inverse(std::move(g));
    }
    case Family::cr: {
      std::size_t m = n - 2;
      const QMatrix& sig = *algebra->hermitian_form();
      Gauss lambda;
      while (lambda.is_zero()) lambda = Gauss(random_rational(rng), random_rational(rng));
      QMatrix u;
      for (;;) {
        QMatrix s(m, m);
        for (std::size_t r = 0; r < m; ++r) {
          s(r, r) = Gauss(0, random_rational(rng));
          for (std::size_t c = r + 1; c < m; ++c) {
            s(r, c) = Gauss(random_rational(rng), random_rational(rng));
            s(c, r) = -s(r, c).conj();
          }
        }
        QMatrix k = sig * s;
        QMatrix id = QMatrix::identity(m);
        auto inv = inverse(id + k);
        if (!inv) continue;
        u = (id - k) * *inv;
        break;
      }
      QMatrix g0(n, n);
      g0(0, 0) = lambda;
      g0.set_block(1, 1, u);
      g0(n - 1, n - 1) = Gauss(1) / lambda.conj();
      auto w = random_element(algebra, 1, 2, rng);
      return with_inverse(g0 * exp_nilpotent(w.matrix()));
    }
  }
  throw std::logic_error("unknown family");
}

AlgebraElement conjugate(const GroupElement& g, const AlgebraElement& y) {
  return AlgebraElement(y.algebra(), g.g * y.matrix() * g.inverse);
}

AlgebraElement standard_isotropy(const AlgebraHandle& algebra, const std::string& type_tag) {
  std::size_t n = algebra->ambient_size();
  auto bad = [&] {
    return Error(ErrorCode::invalid_params, "no isotropy of type '" + type_tag + "' in " + algebra->label());
  };
  switch (algebra->family()) {
    case Family::grassmannian:
    case Family::sl2: {
      std::size_t a = algebra->block_partition()[0], b = algebra->block_partition()[1];
      std::size_t r = 0;
      if (type_tag == "nonzero" && algebra->family() == Family::sl2) {
        r = 1;
      } else if (type_tag.rfind("rank", 0) == 0 && type_tag.size() > 4) {
        try {
          r = std::stoul(type_tag.substr(4));
        } catch (const std::exception&) {
          throw bad();
        }
      }
      if (r == 0 || r > std::min(a, b)) throw bad();
      QMatrix block(a, b);
      for (std::size_t k = 0; k < r; ++k) block(k, k) = 1;
      return from_offdiagonal_block(algebra, 1, block);
    }
    case Family::quaternionic: {
      if (type_tag != "nonzero") throw bad();
      QMatrix block(2, n - 2);
      block.set_block(0, 0, QMatrix::identity(2));
      return from_offdiagonal_block(algebra, 1, block);
    }
    case Family::cr: {
      std::size_t p = static_cast<std::size_t>(algebra->params().p);
      std::size_t q = static_cast<std::size_t>(algebra->params().q);
      if (type_tag == "contact-annihilating") {
        QMatrix m(n, n);
        m(0, n - 1) = gauss_i();
        return AlgebraElement(algebra, std::move(m));
      }
      QMatrix row(1, p + q);
      if (type_tag == "transversal-positive" && p > 0) {
        row(0, 0) = 1;
      } else if (type_tag == "transversal-negative" && q > 0) {
        row(0, p) = 1;
      } else if (type_tag == "transversal-null" && p > 0 && q > 0) {
        row(0, 0) = 1;
        row(0, p) = 1;
      } else {
        throw bad();
      }
      return cr_from_slot(algebra, 1, row);
    }
  }
  throw bad();
}

}  // namespace parabolic
