#include "gomoku/netconfig.h"

#include "gomoku/types.h"

namespace gomoku::mixnet {

void NetConfig::validate() const
{
    if (mapping == 0 || feature == 0 || policy == 0 || value == 0)
        throw EngineError(EngineError::Code::ConfigMismatch, "channel sizes must be positive");
    if (feature % 2 != 0)
        throw EngineError(EngineError::Code::ConfigMismatch, "feature channels must be even");
    if (policy > feature || policy > 64)
        throw EngineError(EngineError::Code::ConfigMismatch,
                          "policy channels must not exceed feature channels or 64");
    if (mapping > 1024 || feature > 1024 || value > 1024)
        throw EngineError(EngineError::Code::ConfigMismatch, "channel size too large");
}

NetConfig netConfigByName(const std::string &name)
{
    if (name == "small")
        return NetConfig::small();
    if (name == "medium")
        return NetConfig::medium();
    if (name == "large")
        return NetConfig::large();
    if (name == "tiny")
        return NetConfig::tiny();
    throw EngineError(EngineError::Code::InvalidArgument, "unknown network size: " + name);
}

std::string toString(const NetConfig &c)
{
    return "M=" + std::to_string(c.mapping) + " C=" + std::to_string(c.feature)
           + " P=" + std::to_string(c.policy) + " V=" + std::to_string(c.value);
}

}  // namespace gomoku::mixnet
