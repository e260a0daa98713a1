#pragma once

#include <string>

namespace mpw::prompts {

// System prompts for the four evaluation settings and the judge. These are
// fixed texts; callers must not edit them at runtime.
extern const std::string kSettingASystem;
extern const std::string kSettingBGuidanceSystem;
extern const std::string kSettingBFewshotSystem;
extern const std::string kSettingCSystem;
extern const std::string kJudgeSystem;

std::string judge_user_prompt(const std::string& question, const std::string& ground_truth,
                              const std::string& prediction);

}  // namespace mpw::prompts
