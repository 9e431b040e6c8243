#pragma once

#include <cmath>
#include <complex>

namespace faddeev {

using cplx = std::complex<double>;

// Small fixed 3-vector over double or complex<double>. Components are
// understood in the cylindrical orthonormal frame (rho-hat, phi-hat, z-hat)
// everywhere in this library unless a function says otherwise.
template <class T>
struct Vec3 {
    T v[3]{};

    T& operator[](int i) { return v[i]; }
    const T& operator[](int i) const { return v[i]; }

    Vec3 operator+(const Vec3& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
    Vec3 operator-(const Vec3& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}; }
    Vec3 operator-() const { return {-v[0], -v[1], -v[2]}; }
    Vec3 operator*(const T& s) const { return {v[0] * s, v[1] * s, v[2] * s}; }
};

using Vec3d = Vec3<double>;
using Vec3c = Vec3<cplx>;

// Bilinear dot product, no conjugation; conjugates are always written
// explicitly at call sites (dot(q, conj(q))).
template <class T>
inline T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline cplx dot(const Vec3d& a, const Vec3c& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
inline Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline Vec3c conj(const Vec3c& a) {
    return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])};
}

inline Vec3d real(const Vec3c& a) { return {a[0].real(), a[1].real(), a[2].real()}; }
inline Vec3d imag(const Vec3c& a) { return {a[0].imag(), a[1].imag(), a[2].imag()}; }

inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }

inline double norm(const Vec3c& a) {
    return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

inline Vec3c to_complex(const Vec3d& a) { return {cplx(a[0]), cplx(a[1]), cplx(a[2])}; }

}  // namespace faddeev
