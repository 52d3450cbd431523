#include "guidyn/prompts/prompts.hpp"

#include <algorithm>

#include "guidyn/common/errors.hpp"
#include "guidyn/common/io.hpp"

namespace guidyn {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_prompts();
}  // namespace detail

std::string_view prompt_asset(std::string_view name) {
  for (const auto& [n, text] : detail::embedded_prompts()) {
    if (n == name) return text;
  }
  throw ConfigError("unknown prompt asset: " + std::string(name));
}

std::vector<std::string> prompt_names() {
  std::vector<std::string> names;
  for (const auto& entry : detail::embedded_prompts()) names.emplace_back(entry.first);
  std::sort(names.begin(), names.end());
  return names;
}

std::string prompt_digest() {
  std::string all;
  for (const auto& name : prompt_names()) {
    all += name;
    all += '\0';
    all += prompt_asset(name);
    all += '\0';
  }
  return sha256_hex(all);
}

PromptMessages split_prompt(std::string_view text) {
  constexpr std::string_view kSystem = "System: ";
  constexpr std::string_view kUser = "User: ";
  PromptMessages out;
  if (text.substr(0, kSystem.size()) != kSystem) {
    out.user = std::string(text);
  } else {
    // Without a "User:" label the system message is the first line.
    const std::size_t user = text.find(std::string("\n") + std::string(kUser));
    const std::size_t end = user == std::string_view::npos ? text.find('\n') : user;
    out.system = std::string(text.substr(kSystem.size(), end - kSystem.size()));
    if (user != std::string_view::npos) {
      out.user = std::string(text.substr(user + 1 + kUser.size()));
    } else if (end != std::string_view::npos) {
      out.user = std::string(text.substr(text.find_first_not_of('\n', end)));
    }
  }
  while (!out.user.empty() && out.user.back() == '\n') out.user.pop_back();
  while (!out.system.empty() && out.system.back() == '\n') out.system.pop_back();
  return out;
}

std::string fill_prompt(std::string_view text, const std::map<std::string, std::string>& values) {
  std::string out(text);
  for (const auto& [key, value] : values) {
    const std::string token = "{" + key + "}";
    std::size_t pos = out.find(token);
    if (pos == std::string::npos) throw ConfigError("prompt has no placeholder " + token);
    while (pos != std::string::npos) {
      out.replace(pos, token.size(), value);
      pos = out.find(token, pos + value.size());
    }
  }
  return out;
}

PromptMessages render_prompt(std::string_view name,
                             const std::map<std::string, std::string>& values) {
  return split_prompt(fill_prompt(prompt_asset(name), values));
}

}  // namespace guidyn
