#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace guidyn {

// Bumped whenever an asset under assets/prompts changes meaning.
inline constexpr std::string_view kPromptVersion = "1";

// Raw template text of an embedded asset (file name without extension).
std::string_view prompt_asset(std::string_view name);
std::vector<std::string> prompt_names();
// sha256 over every asset name and body, in name order.
std::string prompt_digest();

struct PromptMessages {
  std::string system;  // empty when the template has no "System:" line
  std::string user;
};

// Splits a template at its "System:" and "User:" labels. Without a "User:" label the rest
// after the system line is the user message; text without labels is all user.
PromptMessages split_prompt(std::string_view text);

// Replaces each "{key}" with its value. Every key must occur in the template.
std::string fill_prompt(std::string_view text, const std::map<std::string, std::string>& values);

// Renders asset `name` filled with `values` and split into messages.
PromptMessages render_prompt(std::string_view name,
                             const std::map<std::string, std::string>& values);

}  // namespace guidyn
