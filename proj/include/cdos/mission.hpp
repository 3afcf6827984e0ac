
/* mission.hpp */

#ifndef CDOS_MISSION_HPP
#define CDOS_MISSION_HPP

#include "cdos/explorer.hpp"
#include "cdos/world.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdos {

/* Tether geometry, all in meters. lt is the released length. */
struct TetherState
{
    double L = 5.0;
    double l0 = 2.1;
    double lt = 0.0;
    double zW = 2.0;

    void Validate() const;
};

enum class TetherMode : std::uint8_t { Aerial, Landing, Ground };

const char* TetherModeName(TetherMode m);

/* lt = 0 is aerial, (0, zW] is landing, [l0, L] is ground. A released
 * length between zW and l0 counts as landing, and when l0 <= zW the
 * landing interval takes precedence over the shared stretch. Throws
 * std::out_of_range for lt outside [0, L]. */
TetherMode ModeFromTether(const TetherState& t);

enum class MissionPhase : std::uint8_t {
    AerialExploration,
    Landing,
    HiddenExploration,
    ObjectTracking,
    Grabbing,
    Retracting,
    AerialContinue,
    Complete,
};

inline constexpr int MissionPhaseCount = 8;

const char* MissionPhaseName(MissionPhase p);

enum class MissionEventKind : std::uint8_t {
    HiddenSpaceFound,
    Touchdown,
    Detection,
    FrontiersExhausted,
    WithinDMin,
    GrabComplete,
    RetractComplete,
    ResumeSearch,
};

inline constexpr int MissionEventKindCount = 8;

const char* MissionEventName(MissionEventKind k);

struct MissionEvent
{
    MissionEventKind kind = MissionEventKind::HiddenSpaceFound;
    /* Detection confidence, only read for Detection */
    double confidence = 0.0;
    /* Only read for RetractComplete */
    bool objectAboard = false;
};

class RejectedTransition : public std::logic_error
{
public:
    RejectedTransition(MissionPhase phase, const MissionEvent& event);

    MissionPhase Phase() const { return mPhase; }
    MissionEventKind Event() const { return mEvent; }

private:
    MissionPhase mPhase;
    MissionEventKind mEvent;
};

/* Applies one event. Pairs outside the transition table, and detections
 * at or below the threshold, throw RejectedTransition. */
MissionPhase StepMission(MissionPhase phase, const MissionEvent& event,
                         double detectionThreshold = 0.95);

struct GrabResult
{
    Pose pose;
    double time = 0.0;
};

/* Turn half a revolution away from the target, then reverse onto it.
 * The time is the motion's rotation penalty plus the reversing distance
 * over max velocity. Throws std::invalid_argument when the robot is
 * further than dMin from the target center. */
GrabResult GrabManeuver(const Pose& pose, const Cell& target, double cellSize,
                        const MotionConfig& motion, double dMin);

struct MissionConfig
{
    ExplorerConfig explorer;
    Method method = Method::Cdos;
    TetherState tether;
    /* m/s for both release and retraction */
    double tetherSpeed = 0.5;
    double dMin = 0.2;

    void Validate() const;
};

struct MissionRecord
{
    double time = 0.0;
    MissionPhase phase = MissionPhase::AerialExploration;
    /* Event that led into this phase, empty for the initial record */
    std::string event;
    double tetherLength = 0.0;
    TetherMode mode = TetherMode::Aerial;
    Pose pose;
};

struct MissionTrace
{
    std::vector<MissionRecord> records;
    bool objectRetrieved = false;
    double totalTime = 0.0;
    double searchTime = 0.0;
};

/* Scripted mission: land, search the hidden space, then either track,
 * grab and retract with the object or retract empty-handed and resume
 * the aerial search. */
MissionTrace RunMission(const GridWorld& world, const MissionConfig& cfg);

std::string MissionTraceJsonLines(const MissionTrace& trace);

} // namespace cdos

#endif // CDOS_MISSION_HPP
