#include "acspin/operators.hpp"

namespace acspin {

namespace {

Mat kron2(const Mat& a, const Mat& b) {
    Mat out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return out;
}

Mat identity2() { return Mat::Identity(2, 2); }

}  // namespace

Mat pauli_operator(Axis axis) {
    Mat s(2, 2);
    const complexd i(0.0, 1.0);
    switch (axis) {
        case Axis::X:
            s << 0.0, 0.5, 0.5, 0.0;
            break;
        case Axis::Y:
            s << 0.0, -0.5 * i, 0.5 * i, 0.0;
            break;
        case Axis::Z:
            s << 0.5, 0.0, 0.0, -0.5;
            break;
    }
    return s;
}

Mat embed_pair_operator(Axis axis, int site) {
    if (site != 1 && site != 2) throw InvalidParams("pair site must be 1 or 2");
    Mat s = pauli_operator(axis);
    return site == 1 ? kron2(s, identity2()) : kron2(identity2(), s);
}

Mat total_spin_operator(const SystemSpec& spec, Axis axis) {
    if (spec.kind == SpinKind::SingleSpin) return pauli_operator(axis);
    return 0.5 * (embed_pair_operator(axis, 1) + embed_pair_operator(axis, 2));
}

Mat build_static_hamiltonian(const SystemSpec& spec) {
    if (spec.kind == SpinKind::SingleSpin) {
        return spec.h0 * pauli_operator(Axis::Z);
    }
    const Exchange& j = *spec.exchange;
    Mat h = spec.h0 * (embed_pair_operator(Axis::Z, 1) + embed_pair_operator(Axis::Z, 2));
    h -= j.jx * embed_pair_operator(Axis::X, 1) * embed_pair_operator(Axis::X, 2);
    h -= j.jy * embed_pair_operator(Axis::Y, 1) * embed_pair_operator(Axis::Y, 2);
    h -= j.jz * embed_pair_operator(Axis::Z, 1) * embed_pair_operator(Axis::Z, 2);
    return h;
}

Mat build_drive_coupling(const SystemSpec& spec) {
    const double a = spec.alpha();
    const double g = spec.gamma();
    if (spec.kind == SpinKind::SingleSpin) {
        return a * pauli_operator(Axis::X) + g * pauli_operator(Axis::Z);
    }
    return a * (embed_pair_operator(Axis::X, 1) + embed_pair_operator(Axis::X, 2)) +
           g * (embed_pair_operator(Axis::Z, 1) + embed_pair_operator(Axis::Z, 2));
}

Mat hamiltonian_at(const SystemSpec& spec, double t) {
    return build_static_hamiltonian(spec) + spec.drive.value(t) * build_drive_coupling(spec);
}

}  // namespace acspin
