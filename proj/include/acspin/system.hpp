#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "acspin/types.hpp"

namespace acspin {

// One term eps_n * cos(n*omega*t + theta_n) of the periodic drive.
struct Harmonic {
    int n = 1;          // harmonic index, must be >= 1 (zero mean by construction)
    double amplitude = 0.0;
    double phase = 0.0;
};

// h(t) = sum_n eps_n cos(n*omega*t + theta_n), period T = 2*pi/omega.
struct DriveWaveform {
    std::vector<Harmonic> harmonics;
    double omega = 1.0;

    static DriveWaveform single_cosine(double epsilon, double omega) {
        DriveWaveform d;
        d.harmonics = {{1, epsilon, 0.0}};
        d.omega = omega;
        return d;
    }

    double period() const { return 2.0 * pi / omega; }

    double value(double t) const {
        double h = 0.0;
        for (const auto& hm : harmonics)
            h += hm.amplitude * std::cos(hm.n * omega * t + hm.phase);
        return h;
    }

    int max_harmonic() const {
        int m = 0;
        for (const auto& hm : harmonics) m = std::max(m, hm.n);
        return m;
    }

    void validate() const {
        if (omega <= 0.0) throw InvalidParams("drive omega must be positive");
        for (const auto& hm : harmonics)
            if (hm.n < 1)
                throw InvalidParams("drive harmonic index must be >= 1 (zero-mean drive)");
    }
};

enum class SpinKind { SingleSpin, SpinPair };

struct Exchange {
    double jx = 0.0, jy = 0.0, jz = 0.0;
};

// Full physical configuration. The tilt angle phi is the single source of
// truth for the drive direction: alpha = sin(phi) (transverse, x) and
// gamma = cos(phi) (longitudinal, z) are always derived, never stored.
struct SystemSpec {
    SpinKind kind = SpinKind::SingleSpin;
    double h0 = 0.0;                     // static field along z
    double phi = 0.0;                    // tilt angle of the ac field in the x-z plane
    std::optional<Exchange> exchange;    // SpinPair only
    DriveWaveform drive;

    int dim() const { return kind == SpinKind::SingleSpin ? 2 : 4; }
    double alpha() const { return std::sin(phi); }
    double gamma() const { return std::cos(phi); }

    void validate() const {
        drive.validate();
        if (kind == SpinKind::SingleSpin && exchange.has_value())
            throw InvalidParams("SingleSpin carries no exchange couplings");
        if (kind == SpinKind::SpinPair && !exchange.has_value())
            throw InvalidParams("SpinPair requires exchange couplings (may be zero)");
    }

    static SystemSpec single_spin(double h0, double phi, DriveWaveform drive) {
        SystemSpec s;
        s.kind = SpinKind::SingleSpin;
        s.h0 = h0;
        s.phi = phi;
        s.drive = std::move(drive);
        return s;
    }

    static SystemSpec spin_pair(double h0, double phi, Exchange j, DriveWaveform drive) {
        SystemSpec s;
        s.kind = SpinKind::SpinPair;
        s.h0 = h0;
        s.phi = phi;
        s.exchange = j;
        s.drive = std::move(drive);
        return s;
    }
};

}  // namespace acspin
