#include "tanlift/jsonio.hpp"

#include <json.hpp>

#include <sstream>

namespace tanlift {

int Report::count(const std::string& status) const {
    int n = 0;
    for (const auto& c : commands)
        if (c.status == status) ++n;
    return n;
}

bool Report::all_ok() const { return count("fail") == 0 && count("error") == 0; }

std::string Report::text() const {
    std::ostringstream os;
    os << "tanlift report (seed " << seed << ")\n";
    for (const auto& c : commands) {
        os << "[" << c.index << "] " << c.text << "\n";
        if (c.status == "pass" || c.status == "fail") {
            os << "    " << (c.status == "pass" ? "PASS" : "FAIL") << " " << c.text;
            if (c.trials > 0) os << " (trials " << c.trials << ", seed " << seed << ")";
            os << "\n";
        } else if (c.status == "error") {
            os << "    ERROR\n";
        }
        for (const auto& line : c.output) os << "    " << line << "\n";
    }
    os << "summary: " << count("pass") << " pass, " << count("fail") << " fail, "
       << count("error") << " error\n";
    return os.str();
}

std::string Report::json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["seed"] = seed;
    j["commands"] = nlohmann::ordered_json::array();
    for (const auto& c : commands) {
        nlohmann::ordered_json e;
        e["index"] = c.index;
        e["text"] = c.text;
        e["kind"] = c.kind;
        e["status"] = c.status;
        e["output"] = c.output;
        if (c.trials > 0) e["trials"] = c.trials;
        j["commands"].push_back(e);
    }
    j["summary"] = {{"pass", count("pass")},
                    {"fail", count("fail")},
                    {"error", count("error")},
                    {"ok", all_ok()}};
    return j.dump(2) + "\n";
}

}  // namespace tanlift
