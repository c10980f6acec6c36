#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rigidkit/se3.hpp"

using namespace rigidkit;
using oracle::kPi;

namespace {

double transform_gap(const Transform& a, const Transform& b) {
  return (to_matrix4(a) - to_matrix4(b)).cwiseAbs().maxCoeff();
}

Transform pure_translation(const Vec3& t) { return Transform(RotationMatrix::identity(), t); }

}  // namespace

TEST_CASE("compose and inverse follow the group laws") {
  oracle::Rng rng(21);
  const Transform id;
  for (int i = 0; i < 1000; ++i) {
    const Transform a = rng.transform(5.0), b = rng.transform(5.0), c = rng.transform(5.0);
    CHECK(transform_gap(compose(id, a), a) < 1e-15);
    CHECK(transform_gap(compose(a, id), a) < 1e-15);
    CHECK(transform_gap(compose(a, inverse(a)), id) < 1e-12);
    CHECK(transform_gap(compose(inverse(a), a), id) < 1e-12);
    CHECK(transform_gap(compose(compose(a, b), c), compose(a, compose(b, c))) < 1e-9);
    CHECK(transform_gap(inverse(inverse(a)), a) < 1e-12);
    CHECK((to_matrix4(compose(a, b)) - to_matrix4(a) * to_matrix4(b)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(oracle::is_rotation(compose(a, b).rotation.matrix()));
  }
  CHECK(transform_gap(inverse(id), id) == 0.0);
  const Transform inv = inverse(pure_translation(Vec3(1, 2, 3)));
  CHECK(inv.rotation.matrix() == Mat3::Identity());
  CHECK(inv.translation == Vec3(-1, -2, -3));
}

TEST_CASE("point and direction actions") {
  oracle::Rng rng(22);
  const Vec3 p(0.5, -1.0, 2.0);
  CHECK(transform_point(Transform(), p) == p);
  CHECK(transform_point(pure_translation(Vec3(1, 2, 3)), Vec3::Zero()) == Vec3(1, 2, 3));
  CHECK(transform_direction(Transform(), p) == p);
  CHECK(transform_direction(pure_translation(Vec3(4, 5, 6)), p) == p);
  for (int i = 0; i < 1000; ++i) {
    const Transform t = rng.transform(10.0);
    const Vec3 a = rng.box(10.0), b = rng.box(10.0), v = rng.box(1.0);
    CHECK(std::abs((transform_point(t, a) - transform_point(t, b)).norm() - (a - b).norm()) < 1e-12);
    CHECK((transform_point(t, a + v) - transform_point(t, a) - transform_direction(t, v)).norm() < 1e-12);
  }
}

TEST_CASE("se3_exp") {
  CHECK(transform_gap(se3_exp(Twist()), Transform()) == 0.0);
  const Transform tr = se3_exp(Twist(Vec3(1, 2, 3), Vec3::Zero()));
  CHECK(tr.rotation.matrix() == Mat3::Identity());
  CHECK(tr.translation == Vec3(1, 2, 3));

  oracle::Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v = rng.box(2.0), w = rng.rotvec(0.0, kPi);
    const Mat4 series = oracle::se3_series(v, w);
    CHECK((to_matrix4(se3_exp(Twist(v, w))) - series).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("small rotations") {
    for (double s : {0.0, 1e-14, 1e-9, 9e-9, 1.1e-8, 1e-6, 1e-3}) {
      const Vec3 v(0.3, -1.2, 0.7), w = Vec3(1, 2, 2) / 3.0 * s;
      CHECK((to_matrix4(se3_exp(Twist(v, w))) - oracle::se3_series(v, w)).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("se3_log") {
  const Twist zero = se3_log(Transform());
  CHECK(zero.v == Vec3::Zero());
  CHECK(zero.w == Vec3::Zero());
  const Twist tr = se3_log(pure_translation(Vec3(1, 2, 3)));
  CHECK(tr.v == Vec3(1, 2, 3));
  CHECK(tr.w == Vec3::Zero());

  oracle::Rng rng(24);
  for (int i = 0; i < 1000; ++i) {
    const Transform t(RotationMatrix(Eigen::AngleAxisd(rng.uniform(0.0, kPi - 1e-3), rng.unit()).toRotationMatrix()),
                      rng.box(3.0));
    CHECK(transform_gap(se3_exp(se3_log(t)), t) < 1e-9);

    const Twist xi(rng.box(3.0), rng.rotvec(0.0, kPi - 1e-3));
    const Twist back = se3_log(se3_exp(xi));
    CHECK((back.vector() - xi.vector()).norm() < 1e-9);
  }

  SUBCASE("rotation of exactly pi stays finite") {
    const Transform t(RotationMatrix(Vec3(1, -1, -1).asDiagonal()), Vec3(0.5, 1.0, -2.0));
    const Twist xi = se3_log(t);
    CHECK(xi.vector().allFinite());
    CHECK(transform_gap(se3_exp(xi), t) < 1e-12);
  }
}

TEST_CASE("adjoint matrix") {
  CHECK(adjoint(Transform()).matrix() == Mat6::Identity());

  oracle::Rng rng(25);
  const RotationMatrix r = rng.rotation();
  Mat6 block = Mat6::Zero();
  block.topLeftCorner<3, 3>() = r.matrix();
  block.bottomRightCorner<3, 3>() = r.matrix();
  CHECK(adjoint(Transform(r, Vec3::Zero())).matrix() == block);

  for (int i = 0; i < 1000; ++i) {
    const Transform t = rng.transform(3.0);
    const Mat6 ad = adjoint(t).matrix();
    CHECK((adjoint(inverse(t)).matrix() - ad.inverse()).cwiseAbs().maxCoeff() < 1e-9);

    // Block layout on (v, w) twists; the off-diagonal block carries the lever arm.
    CHECK((ad.topLeftCorner<3, 3>() - t.rotation.matrix()).norm() == 0.0);
    CHECK((ad.bottomRightCorner<3, 3>() - t.rotation.matrix()).norm() == 0.0);
    CHECK(ad.bottomLeftCorner<3, 3>().norm() == 0.0);
    CHECK((ad.topRightCorner<3, 3>() - oracle::skew(t.translation) * t.rotation.matrix()).norm() < 1e-14);

    const Twist xi(rng.box(1.0), rng.box(1.0));
    CHECK(((adjoint(t) * xi).vector() - adjoint_apply_twist(t, xi).vector()).norm() < 1e-12);
  }
}

TEST_CASE("adjoint action on twists") {
  oracle::Rng rng(26);
  const Twist xi(Vec3(1, 2, 3), Vec3(-0.1, 0.2, 0.3));
  CHECK(adjoint_apply_twist(Transform(), xi).vector() == xi.vector());

  const Vec3 t(1, 0, 0), w(0, 0, 1);
  const Twist lever = adjoint_apply_twist(pure_translation(t), Twist(Vec3::Zero(), w));
  CHECK(lever.v == t.cross(w));
  CHECK(lever.w == w);

  for (int i = 0; i < 1000; ++i) {
    const Transform tf = rng.transform(2.0);
    const Twist x(rng.box(1.0), rng.rotvec(0.0, 1.0));
    const Transform lhs = compose(compose(tf, se3_exp(x)), inverse(tf));
    CHECK(transform_gap(lhs, se3_exp(adjoint_apply_twist(tf, x))) < 1e-9);
  }
}

TEST_CASE("wrench transform keeps power invariant") {
  oracle::Rng rng(27);
  const Wrench h(Vec3(1, 2, 3), Vec3(4, 5, 6));
  CHECK(transform_wrench(Transform(), h).vector() == h.vector());

  const Vec3 t(0, 2, 0), f(1, 0, 0);
  const Wrench moved = transform_wrench(pure_translation(t), Wrench(f, Vec3::Zero()));
  CHECK(moved.f == f);
  CHECK(moved.tau == t.cross(f));

  for (int i = 0; i < 1000; ++i) {
    const Transform tf = rng.transform(3.0);
    const Twist xi(rng.box(2.0), rng.box(2.0));
    const Wrench w(rng.box(10.0), rng.box(10.0));
    const double before = w.f.dot(xi.v) + w.tau.dot(xi.w);
    const Twist xi2 = adjoint_apply_twist(tf, xi);
    const Wrench w2 = transform_wrench(tf, w);
    const double after = w2.f.dot(xi2.v) + w2.tau.dot(xi2.w);
    CHECK(std::abs(after - before) < 1e-9);
  }
}

TEST_CASE("homogeneous matrix form") {
  CHECK(to_matrix4(Transform()) == Mat4::Identity());
  Mat4 expected = Mat4::Identity();
  expected.topRightCorner<3, 1>() = Vec3(1, 2, 3);
  CHECK(to_matrix4(pure_translation(Vec3(1, 2, 3))) == expected);

  CHECK(transform_gap(from_matrix4(Mat4::Identity()), Transform()) == 0.0);

  oracle::Rng rng(28);
  for (int i = 0; i < 500; ++i) {
    const Transform t = rng.transform(10.0);
    CHECK(transform_gap(from_matrix4(to_matrix4(t)), t) < 1e-12);
  }

  SUBCASE("drift below the repair limit is projected away") {
    const Transform t = rng.transform(1.0);
    Mat4 m = to_matrix4(t);
    m.topLeftCorner<3, 3>() *= 1.00001;
    const Transform fixed = from_matrix4(m);
    CHECK(oracle::is_rotation(fixed.rotation.matrix()));
    CHECK((fixed.rotation.matrix() - t.rotation.matrix()).norm() < 1e-4);
    CHECK(fixed.translation == t.translation);
  }

  SUBCASE("rejections") {
    Mat4 bad_row = Mat4::Identity();
    bad_row(3, 0) = 1e-6;
    CHECK_THROWS_AS(from_matrix4(bad_row), InvalidHomogeneousRow);
    bad_row = Mat4::Identity();
    bad_row(3, 3) = 2.0;
    CHECK_THROWS_AS(from_matrix4(bad_row), InvalidHomogeneousRow);

    Mat4 far = Mat4::Identity();
    far.topLeftCorner<3, 3>() *= 1.001;
    CHECK_THROWS_AS(from_matrix4(far), NotARotation);
    Mat4 mirror = Mat4::Identity();
    mirror(2, 2) = -1.0;
    CHECK_THROWS_AS(from_matrix4(mirror), NotARotation);
  }
}
