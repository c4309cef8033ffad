#include "causalis/fixtures.hpp"

#include <array>
#include <utility>

namespace causalis {

namespace {

struct Fixture {
    const char* name;
    const char* text;
};

// Two arsonists, disjunctive scenario: either match burns the forest.
constexpr const char* kArsonDisjunctive = R"(# two arsonists, disjunctive scenario
exo U : {u00, u10, u01, u11}
endo ML1 : {0, 1}
endo ML2 : {0, 1}
endo FB : {0, 1}
eq ML1 (U): (u10) -> 1 ; (u11) -> 1 ; default -> 0
eq ML2 (U): (u01) -> 1 ; (u11) -> 1 ; default -> 0
eq FB (ML1, ML2): (0, 0) -> 0 ; default -> 1
prob: U=u00 -> 1/4
prob: U=u10 -> 1/4
prob: U=u01 -> 1/4
prob: U=u11 -> 1/4
)";

// Conjunctive scenario: both matches are needed.
constexpr const char* kArsonConjunctive = R"(# two arsonists, conjunctive scenario
exo U : {u00, u10, u01, u11}
endo ML1 : {0, 1}
endo ML2 : {0, 1}
endo FB : {0, 1}
eq ML1 (U): (u10) -> 1 ; (u11) -> 1 ; default -> 0
eq ML2 (U): (u01) -> 1 ; (u11) -> 1 ; default -> 0
eq FB (ML1, ML2): (1, 1) -> 1 ; default -> 0
prob: U=u00 -> 1/4
prob: U=u10 -> 1/4
prob: U=u01 -> 1/4
prob: U=u11 -> 1/4
)";

// Conjunctive arsonists with lightning as an exogenous alternative cause.
constexpr const char* kArsonConjunctiveLightning =
    R"(# conjunctive arsonists plus an exogenous alternative cause (lightning)
exo U : {u00, u10, u01, u11}
exo UL : {0, 1}
endo ML1 : {0, 1}
endo ML2 : {0, 1}
endo FB : {0, 1}
eq ML1 (U): (u10) -> 1 ; (u11) -> 1 ; default -> 0
eq ML2 (U): (u01) -> 1 ; (u11) -> 1 ; default -> 0
eq FB (ML1, ML2, UL): (1, 1, 0) -> 1 ; (1, 1, 1) -> 1 ; (1, 0, 1) -> 1 ; (0, 1, 1) -> 1 ; (0, 0, 1) -> 1 ; default -> 0
)";

// The agent saw the fire; one arsonist, the other arsonist, or both did it.
constexpr const char* kArsonConjunctiveLightningK = R"(U=u10, UL=1
U=u01, UL=1
U=u11, UL=0
)";

constexpr const char* kArsonDisjunctiveK = R"(U=u10
U=u01
U=u11
)";

constexpr const char* kArsonConjunctiveSingleK = R"(U=u11
)";

// Disjunctive arsonists with oxygen as a named endogenous variable and a rare
// exogenous combustible gas that can stand in for it.
constexpr const char* kArsonOxygen = R"(# disjunctive arsonists with an oxygen variable
exo U : {u00, u10, u01, u11}
exo UO : {0, 1}
exo UG : {0, 1}
endo ML1 : {0, 1}
endo ML2 : {0, 1}
endo O : {0, 1}
endo FB : {0, 1}
eq ML1 (U): (u10) -> 1 ; (u11) -> 1 ; default -> 0
eq ML2 (U): (u01) -> 1 ; (u11) -> 1 ; default -> 0
eq O (UO): (1) -> 1 ; default -> 0
eq FB (ML1, ML2, O, UG): (1, 1, 0, 0) -> 0 ; (1, 0, 0, 0) -> 0 ; (0, 1, 0, 0) -> 0 ; (0, 0, 0, 0) -> 0 ; (0, 0, 0, 1) -> 0 ; (0, 0, 1, 0) -> 0 ; (0, 0, 1, 1) -> 0 ; default -> 1
prob: U=u00, UO=1, UG=0 -> 891/4000
prob: U=u00, UO=1, UG=1 -> 9/4000
prob: U=u00, UO=0, UG=0 -> 99/4000
prob: U=u00, UO=0, UG=1 -> 1/4000
prob: U=u10, UO=1, UG=0 -> 891/4000
prob: U=u10, UO=1, UG=1 -> 9/4000
prob: U=u10, UO=0, UG=0 -> 99/4000
prob: U=u10, UO=0, UG=1 -> 1/4000
prob: U=u01, UO=1, UG=0 -> 891/4000
prob: U=u01, UO=1, UG=1 -> 9/4000
prob: U=u01, UO=0, UG=0 -> 99/4000
prob: U=u01, UO=0, UG=1 -> 1/4000
prob: U=u11, UO=1, UG=0 -> 891/4000
prob: U=u11, UO=1, UG=1 -> 9/4000
prob: U=u11, UO=0, UG=0 -> 99/4000
prob: U=u11, UO=0, UG=1 -> 1/4000
)";

// All fire contexts of the oxygen model (the posterior K).
constexpr const char* kArsonOxygenK = R"(U=u10, UO=1, UG=0
U=u10, UO=1, UG=1
U=u10, UO=0, UG=1
U=u01, UO=1, UG=0
U=u01, UO=1, UG=1
U=u01, UO=0, UG=1
U=u11, UO=1, UG=0
U=u11, UO=1, UG=1
U=u11, UO=0, UG=1
)";

constexpr const char* kArsonOxygenPriorK = R"(U=u00, UO=0, UG=0
U=u00, UO=0, UG=1
U=u00, UO=1, UG=0
U=u00, UO=1, UG=1
U=u10, UO=0, UG=0
U=u10, UO=0, UG=1
U=u10, UO=1, UG=0
U=u10, UO=1, UG=1
U=u01, UO=0, UG=0
U=u01, UO=0, UG=1
U=u01, UO=1, UG=0
U=u01, UO=1, UG=1
U=u11, UO=0, UG=0
U=u11, UO=0, UG=1
U=u11, UO=1, UG=0
U=u11, UO=1, UG=1
)";

constexpr const char* kArsonOxygenPriorW = R"(U=u00, UO=0, UG=0 -> 99/4000
U=u00, UO=0, UG=1 -> 1/4000
U=u00, UO=1, UG=0 -> 891/4000
U=u00, UO=1, UG=1 -> 9/4000
U=u10, UO=0, UG=0 -> 99/4000
U=u10, UO=0, UG=1 -> 1/4000
U=u10, UO=1, UG=0 -> 891/4000
U=u10, UO=1, UG=1 -> 9/4000
U=u01, UO=0, UG=0 -> 99/4000
U=u01, UO=0, UG=1 -> 1/4000
U=u01, UO=1, UG=0 -> 891/4000
U=u01, UO=1, UG=1 -> 9/4000
U=u11, UO=0, UG=0 -> 99/4000
U=u11, UO=0, UG=1 -> 1/4000
U=u11, UO=1, UG=0 -> 891/4000
U=u11, UO=1, UG=1 -> 9/4000
)";

// April showers: heavy April rain pushes an electric-storm fire from May to
// June; with no storm at all there is no fire.
constexpr const char* kAprilShowers = R"(# April showers, electric storms and the month of the fire
exo UA : {0, 1}
exo UE : {(0,0), (1,0), (0,1), (1,1)}
endo AS : {0, 1}
endo ES : {(0,0), (1,0), (0,1), (1,1)}
endo F : {0, 1, 2}
eq AS (UA): (1) -> 1 ; default -> 0
eq ES (UE): ((0,0)) -> (0,0) ; ((1,0)) -> (1,0) ; ((0,1)) -> (0,1) ; ((1,1)) -> (1,1)
eq F (AS, ES): (0, (0,0)) -> 0 ; (0, (1,0)) -> 1 ; (0, (0,1)) -> 2 ; (0, (1,1)) -> 1 ; (1, (0,0)) -> 0 ; (1, (1,0)) -> 2 ; (1, (0,1)) -> 2 ; (1, (1,1)) -> 2
)";

// Storm happened, month unknown, April rain unknown.
constexpr const char* kAprilShowersSixK = R"(UA=0, UE=(1,0)
UA=0, UE=(0,1)
UA=0, UE=(1,1)
UA=1, UE=(1,0)
UA=1, UE=(0,1)
UA=1, UE=(1,1)
)";

// Contexts compatible with a June fire.
constexpr const char* kAprilShowersJuneK = R"(UA=1, UE=(0,1)
UA=1, UE=(1,1)
UA=0, UE=(0,1)
)";

constexpr const char* kAprilShowersSingleK = R"(UA=1, UE=(1,1)
)";

// Victoria's tan: Canaries plus sun, or the tanning salon. The agent knows
// about the salon visit; sun and the trip are open.
constexpr const char* kVictoria = R"(# Victoria is tanned
exo UC : {0, 1}
exo US : {0, 1}
exo UB : {0, 1}
endo Canaries : {0, 1}
endo Sunny : {0, 1}
endo Salon : {0, 1}
endo Tan : {0, 1}
eq Canaries (UC): (1) -> 1 ; default -> 0
eq Sunny (US): (1) -> 1 ; default -> 0
eq Salon (UB): (1) -> 1 ; default -> 0
eq Tan (Canaries, Sunny, Salon): (1, 1, 0) -> 1 ; (1, 1, 1) -> 1 ; (1, 0, 1) -> 1 ; (0, 1, 1) -> 1 ; (0, 0, 1) -> 1 ; default -> 0
)";

constexpr const char* kVictoriaK = R"(UC=1, US=1, UB=1
UC=1, US=0, UB=1
UC=0, US=1, UB=1
UC=0, US=0, UB=1
)";

constexpr const char* kVictoriaW = R"(UC=1, US=1, UB=1 -> 9/20
UC=1, US=0, UB=1 -> 1/20
UC=0, US=1, UB=1 -> 9/20
UC=0, US=0, UB=1 -> 1/20
)";

// Television with sound but no picture. Context u_ab: a is the tube status
// (T=a); b=1 means the picture follows the tube, b=0 means it mysteriously
// stays dark whatever the tube does.
constexpr const char* kTv = R"(# television: sound but no picture
exo U : {u00, u01, u10, u11}
endo T : {0, 1}
endo P : {0, 1}
eq T (U): (u10) -> 1 ; (u11) -> 1 ; default -> 0
eq P (U, T): (u01, 0) -> 0 ; (u01, 1) -> 1 ; (u11, 0) -> 0 ; (u11, 1) -> 1 ; default -> 0
)";

constexpr const char* kTvK = R"(U=u00
U=u01
U=u10
)";

constexpr const char* kTvW = R"(U=u00 -> 1/20
U=u01 -> 9/20
U=u10 -> 1/2
)";

// The television model with the mysterious cause named: I=0 is the blackout.
constexpr const char* kTvNamed = R"(# television with the inexplicable cause named
exo U : {u00, u01, u10, u11}
endo T : {0, 1}
endo I : {0, 1}
endo P : {0, 1}
eq T (U): (u10) -> 1 ; (u11) -> 1 ; default -> 0
eq I (U): (u01) -> 1 ; (u11) -> 1 ; default -> 0
eq P (T, I): (1, 1) -> 1 ; default -> 0
)";

// Paresis: develops only in long-time syphilitics, and only in a few of them.
constexpr const char* kParesis = R"(# paresis follows syphilis, given the disposition
exo U1 : {0, 1}
exo U2 : {0, 1}
endo S : {0, 1}
endo P : {0, 1}
eq S (U1): (1) -> 1 ; default -> 0
eq P (S, U2): (1, 1) -> 1 ; default -> 0
)";

// An alternative mechanism: paresis strikes by disposition alone.
constexpr const char* kParesisAlt = R"(# paresis independent of syphilis
exo U1 : {0, 1}
exo U2 : {0, 1}
endo S : {0, 1}
endo P : {0, 1}
eq S (U1): (1) -> 1 ; default -> 0
eq P (U2): (1) -> 1 ; default -> 0
)";

constexpr const char* kParesisSituations = R"(# an agent unsure how paresis comes about
paresis | U1=1, U2=1
paresis_alt | U1=0, U2=1
paresis_alt | U1=1, U2=1
)";

constexpr const char* kParesisSingleSituations = R"(# the causal model is known
paresis | U1=1, U2=1
)";

// The barometer falls when it rains unless it is defective; it causes nothing.
constexpr const char* kBarometer = R"(# a falling barometer does not explain the rain
exo UR : {0, 1}
exo UD : {0, 1}
endo R : {0, 1}
endo B : {0, 1}
eq R (UR): (1) -> 1 ; default -> 0
eq B (UR, UD): (1, 0) -> 1 ; default -> 0
prob: UR=0, UD=0 -> 9/20
prob: UR=0, UD=1 -> 1/20
prob: UR=1, UD=0 -> 9/20
prob: UR=1, UD=1 -> 1/20
)";

constexpr const char* kBarometerK = R"(UR=1, UD=0
UR=1, UD=1
)";

constexpr const char* kBarometerW = R"(UR=1, UD=0 -> 9/10
UR=1, UD=1 -> 1/10
)";

constexpr const char* kBarometerPriorK = R"(UR=0, UD=0
UR=0, UD=1
UR=1, UD=0
UR=1, UD=1
)";

constexpr const char* kBarometerPriorW = R"(UR=0, UD=0 -> 9/20
UR=0, UD=1 -> 1/20
UR=1, UD=0 -> 9/20
UR=1, UD=1 -> 1/20
)";

constexpr std::array<Fixture, 30> kFixtures{{
    {"arson_disjunctive", kArsonDisjunctive},
    {"arson_disjunctive.k", kArsonDisjunctiveK},
    {"arson_conjunctive", kArsonConjunctive},
    {"arson_conjunctive_single.k", kArsonConjunctiveSingleK},
    {"arson_conjunctive_lightning", kArsonConjunctiveLightning},
    {"arson_conjunctive_lightning.k", kArsonConjunctiveLightningK},
    {"arson_oxygen", kArsonOxygen},
    {"arson_oxygen.k", kArsonOxygenK},
    {"arson_oxygen.prior.k", kArsonOxygenPriorK},
    {"arson_oxygen.prior.w", kArsonOxygenPriorW},
    {"april_showers", kAprilShowers},
    {"april_showers.six.k", kAprilShowersSixK},
    {"april_showers.june.k", kAprilShowersJuneK},
    {"april_showers.single.k", kAprilShowersSingleK},
    {"victoria", kVictoria},
    {"victoria.k", kVictoriaK},
    {"victoria.w", kVictoriaW},
    {"tv", kTv},
    {"tv.k", kTvK},
    {"tv.w", kTvW},
    {"tv_named", kTvNamed},
    {"paresis", kParesis},
    {"paresis_alt", kParesisAlt},
    {"paresis.situations", kParesisSituations},
    {"paresis.single.situations", kParesisSingleSituations},
    {"barometer", kBarometer},
    {"barometer.k", kBarometerK},
    {"barometer.w", kBarometerW},
    {"barometer.prior.k", kBarometerPriorK},
    {"barometer.prior.w", kBarometerPriorW},
}};

}  // namespace

std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    for (const Fixture& f : kFixtures) names.emplace_back(f.name);
    return names;
}

std::optional<std::string> find_fixture(const std::string& name) {
    for (const Fixture& f : kFixtures)
        if (name == f.name) return std::string(f.text);
    return std::nullopt;
}

}  // namespace causalis
