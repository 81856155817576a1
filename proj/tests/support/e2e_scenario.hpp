// Copyright 2026 The orbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef ORBENCH_TESTS_SUPPORT_E2E_SCENARIO_HPP_
#define ORBENCH_TESTS_SUPPORT_E2E_SCENARIO_HPP_

#include <cstdio>
#include <regex>
#include <string>

#include "scripted_transport.hpp"

// Canned model behaviour for the ten-case replay benchmark. Scripts stand in
// for solver calls with a SimpleNamespace so the run needs only python3.
// Six of the ten cases end up matching the stored answer.
namespace orbench::testing::e2e {

inline std::string solved(const std::string& objval, int status = 1) {
  return "from types import SimpleNamespace\n"
         "COPT = SimpleNamespace(OPTIMAL=1)\n"
         "model = SimpleNamespace(status=" + std::to_string(status) +
         ", objval=" + objval + ")";
}

inline std::string script_for(int id) {
  switch (id) {
    case 1: return solved("150.0");
    case 2: return solved("2.4");      // rounds to the stored 2
    case 3: return solved("3050.0");
    case 4: return solved("None", 0);  // no optimum, as stored
    case 5: return solved("0.04");     // zero branch
    case 6: return solved("1040.0");   // within 5%
    case 7: return solved("700.0");    // runs, wrong value
    case 8:
      return "from types import SimpleNamespace\n"
             "model = SimpleNamespace(status=1 objval=42)";
    case 9:
      return "class Model:\n"
             "    pass\n"
             "model = Model()\n"
             "model.update()";
    default: return {};
  }
}

inline int case_of(const ChatMessages& messages) {
  static const std::regex re(R"(\[case (\d\d)\])");
  for (const auto& [role, text] : messages) {
    std::smatch m;
    if (std::regex_search(text, m, re)) return std::stoi(m[1]);
  }
  return 0;
}

inline std::string tag(int id) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "[case %02d]", id);
  return buf;
}

inline ScriptedReply reply(const ChatMessages& messages) {
  const int id = case_of(messages);
  const std::string user = last_user_message(messages);
  const bool tool_prompt = user.find("TOOL: <name>") != std::string::npos;
  const bool tool_followup = user.rfind("TOOL_RESULT:", 0) == 0;
  bool mathematician = false;
  for (const auto& [role, text] : messages) {
    if (role == "system" && text.find("expert mathematician") != std::string::npos) {
      mathematician = true;
    }
  }
  if (tool_prompt && !tool_followup) {
    return {"Let me check the API first.\nTOOL: addVariable\nTOOL: Model.addVar",
            "need the variable constructor"};
  }
  if (mathematician) {
    return {tag(id) + " Decision variables x >= 0. Objective and constraints "
                      "follow from the statement.",
            "modelling " + tag(id)};
  }
  const std::string code = script_for(id);
  if (code.empty()) return {"I could not model " + tag(id) + ".", std::nullopt};
  return {"Here is the program for " + tag(id) + ".\n\n```python\n" + code +
              "\n```\n",
          "reasoning for " + tag(id)};
}

}  // namespace orbench::testing::e2e

#endif  // ORBENCH_TESTS_SUPPORT_E2E_SCENARIO_HPP_
