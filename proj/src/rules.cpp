/*
 * Copyright (C) 2026 The droidsmell Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "droidsmell/rules.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "droidsmell/errors.hpp"

namespace droidsmell {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i]))
            != std::tolower(static_cast<unsigned char>(prefix[i]))) {
            return false;
        }
    }
    return true;
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
    return lower(haystack).find(lower(needle)) != std::string::npos;
}

// Evidence is capped at 200 bytes; the cut respects UTF-8 boundaries.
std::string truncate_evidence(std::string evidence) {
    constexpr std::size_t kMax = 200;
    if (evidence.size() <= kMax) return evidence;
    std::size_t cut = kMax - 3;
    while (cut > 0 && (static_cast<unsigned char>(evidence[cut]) & 0xC0) == 0x80) --cut;
    evidence.resize(cut);
    evidence += "...";
    return evidence;
}

Finding mk(std::string path, int line, std::string evidence, Severity severity) {
    Finding f;
    f.path = std::move(path);
    f.line = line;
    f.evidence = std::move(evidence);
    f.severity = severity;
    return f;
}

std::string component_path(const Component& c) {
    return "manifest/application/" + to_string(c.kind) + "[" + c.name + "]";
}

template <typename Fn>
void for_each_method(const CodeIndex& index, Fn&& fn) {
    for (const auto& [name, cls] : index.classes_by_name) {
        for (const auto& method : cls.methods) {
            fn(cls, method);
        }
    }
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

std::vector<Finding> rule_debuggable(const RuleContext& ctx) {
    std::vector<Finding> out;
    if (ctx.manifest.debuggable == TriBool::True) {
        out.push_back(mk("manifest/application", 0, "android:debuggable=\"true\"",
                         Severity::Critical));
    }
    return out;
}

std::vector<Finding> rule_insecure_protocol(const RuleContext& ctx) {
    std::vector<Finding> out;
    for (const auto& lit : ctx.index.string_literals) {
        if (starts_with_ci(lit.value, "http://") || starts_with_ci(lit.value, "ftp://")) {
            out.push_back(mk(lit.source_path, lit.line, lit.value, Severity::Warning));
        }
    }
    return out;
}

const std::set<std::string>& standard_schemes() {
    static const std::set<std::string> schemes = {
            "http", "https", "file",  "content", "mailto", "tel",       "geo",
            "sms",  "smsto", "mms",   "mmsto",   "about",  "javascript",
    };
    return schemes;
}

std::vector<Finding> rule_custom_scheme(const RuleContext& ctx) {
    std::vector<Finding> out;
    for (const auto& component : ctx.manifest.components) {
        for (const auto& filter : component.intent_filters) {
            for (const auto& scheme : filter.data_schemes) {
                if (scheme.empty() || scheme[0] == '@') continue;  // unresolved resource
                if (standard_schemes().count(scheme)) continue;
                out.push_back(mk(component_path(component) + "/intent-filter/data[scheme="
                                         + scheme + "]",
                                 0, "android:scheme=\"" + scheme + "\"", Severity::Warning));
            }
        }
    }
    if (const auto* sites = ctx.index.find_invokes("Lorg/apache/http/conn/scheme/SchemeRegistry;",
                                                   "register")) {
        for (const auto& site : *sites) {
            out.push_back(mk(site.source_path, site.line, site.text, Severity::Warning));
        }
    }
    return out;
}

std::vector<Finding> rule_hardware_id(const RuleContext& ctx) {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> targets = {
            {"Landroid/telephony/TelephonyManager;",
             {"getDeviceId", "getSubscriberId", "getSimSerialNumber", "getLine1Number"}},
            {"Landroid/bluetooth/BluetoothAdapter;", {"getAddress"}},
            {"Landroid/net/wifi/WifiInfo;", {"getMacAddress"}},
    };
    std::vector<Finding> out;
    for (const auto& [cls, methods] : targets) {
        for (const auto& method : methods) {
            if (const auto* sites = ctx.index.find_invokes(cls, method)) {
                for (const auto& site : *sites) {
                    out.push_back(mk(site.source_path, site.line, site.text, Severity::Warning));
                }
            }
        }
    }
    for (const auto& lit : ctx.index.string_literals) {
        if (lit.value == "android_id") {
            out.push_back(mk(lit.source_path, lit.line, lit.value, Severity::Warning));
        }
    }
    return out;
}

std::vector<Finding> rule_clipboard(const RuleContext& ctx) {
    std::vector<Finding> out;
    for (const char* cls : {"Landroid/content/ClipboardManager;", "Landroid/text/ClipboardManager;"}) {
        for (const auto* site : ctx.index.invokes_on_class(cls)) {
            out.push_back(mk(site->source_path, site->line, site->text, Severity::Warning));
        }
    }
    return out;
}

bool sensitive_header_key(std::string_view literal) {
    std::string low = lower(literal);
    static constexpr std::string_view keys[] = {"authorization", "cookie",  "token",
                                                "password",      "secret",  "apikey",
                                                "api-key",       "api_key"};
    for (auto key : keys) {
        if (low.find(key) != std::string::npos) return true;
    }
    return false;
}

std::vector<Finding> rule_header_attachment(const RuleContext& ctx) {
    std::vector<Finding> out;
    for_each_method(ctx.index, [&](const SmaliClass& cls, const SmaliMethod& method) {
        bool checked_sensitive = false;
        bool sensitive = false;
        for (const auto& ins : method.instructions) {
            if (!ins.method_ref) continue;
            const MethodRef& ref = *ins.method_ref;
            bool apache = (ref.method_name == "addHeader" || ref.method_name == "setHeader")
                          && ref.class_name.rfind("Lorg/apache/http/", 0) == 0;
            bool urlconn = ref.method_name == "setRequestProperty"
                           && ref.class_name == "Ljava/net/HttpURLConnection;";
            if (!apache && !urlconn) continue;
            if (!checked_sensitive) {
                checked_sensitive = true;
                for (const auto& other : method.instructions) {
                    if (other.string_literal && sensitive_header_key(*other.string_literal)) {
                        sensitive = true;
                        break;
                    }
                }
            }
            out.push_back(mk(cls.source_path, ins.line, ins.raw_text,
                             sensitive ? Severity::Critical : Severity::Warning));
        }
    });
    return out;
}

std::vector<Finding> rule_xss_injection(const RuleContext& ctx) {
    bool loads_content = false;
    for (const char* method : {"loadUrl", "loadData", "loadDataWithBaseURL"}) {
        if (ctx.index.find_invokes("Landroid/webkit/WebView;", method)) {
            loads_content = true;
            break;
        }
    }
    if (!loads_content) return {};

    std::vector<Finding> out;
    for_each_method(ctx.index, [&](const SmaliClass& cls, const SmaliMethod& method) {
        for (std::size_t i = 0; i < method.instructions.size(); ++i) {
            const Instruction& ins = method.instructions[i];
            if (!ins.method_ref) continue;
            if (ins.method_ref->class_name != "Landroid/webkit/WebSettings;"
                || ins.method_ref->method_name != "setJavaScriptEnabled") {
                continue;
            }
            auto reg = invoke_arg_register(ins, 0);
            if (!reg) continue;
            auto value = resolve_const_int(method, i, *reg);
            if (value && *value == 1) {
                out.push_back(mk(cls.source_path, ins.line, ins.raw_text, Severity::Critical));
            }
        }
    });
    return out;
}

std::vector<Finding> rule_webview_bridge(const RuleContext& ctx) {
    std::vector<Finding> out;
    if (const auto* sites =
                ctx.index.find_invokes("Landroid/webkit/WebView;", "addJavascriptInterface")) {
        for (const auto& site : *sites) {
            out.push_back(mk(site.source_path, site.line, site.text, Severity::Critical));
        }
    }
    return out;
}

std::vector<Finding> rule_dynamic_loading(const RuleContext& ctx) {
    static const std::set<std::string> loader_classes = {
            "Ldalvik/system/DexClassLoader;",
            "Ldalvik/system/InMemoryDexClassLoader;",
            "Ljava/net/URLClassLoader;",
    };
    std::vector<Finding> out;
    for (const auto& cls : loader_classes) {
        for (const auto* site : ctx.index.invokes_on_class(cls)) {
            out.push_back(mk(site->source_path, site->line, site->text, Severity::Warning));
        }
    }
    // The platform constructs PathClassLoader itself: only an explicit
    // new-instance in app code counts.
    for_each_method(ctx.index, [&](const SmaliClass& cls, const SmaliMethod& method) {
        for (const auto& ins : method.instructions) {
            if (ins.mnemonic == "new-instance"
                && ins.raw_text.find("Ldalvik/system/PathClassLoader;") != std::string::npos) {
                out.push_back(mk(cls.source_path, ins.line, ins.raw_text, Severity::Warning));
            }
        }
    });
    for (const auto* site : ctx.index.invokes_named("createPackageContext")) {
        out.push_back(mk(site->source_path, site->line, site->text, Severity::Warning));
    }
    return out;
}

std::vector<Finding> rule_cert_validation(const RuleContext& ctx) {
    std::vector<Finding> out;
    auto trivial_overrides = [&](const char* iface, const char* method_name) {
        auto it = ctx.index.implementors.find(iface);
        if (it == ctx.index.implementors.end()) return;
        for (const auto& class_name : it->second) {
            const auto& cls = ctx.index.classes_by_name.at(class_name);
            for (const auto& method : cls.methods) {
                if (method.name == method_name && trivial_body(method)) {
                    out.push_back(mk(cls.source_path, method.line_of_declaration,
                                     cls.name + "->" + method.name + method.descriptor,
                                     Severity::Critical));
                }
            }
        }
    };
    trivial_overrides("Ljavax/net/ssl/X509TrustManager;", "checkServerTrusted");
    trivial_overrides("Ljavax/net/ssl/HostnameVerifier;", "verify");

    for (const auto& [name, cls] : ctx.index.classes_by_name) {
        if (!ctx.index.derives_from(name, "Landroid/webkit/WebViewClient;")) continue;
        for (const auto& method : cls.methods) {
            if (method.name != "onReceivedSslError") continue;
            bool proceeds = false;
            bool branches = false;
            for (const auto& ins : method.instructions) {
                if (ins.method_ref && ins.method_ref->method_name == "proceed"
                    && ins.method_ref->class_name == "Landroid/webkit/SslErrorHandler;") {
                    proceeds = true;
                }
                if (ins.mnemonic.rfind("if-", 0) == 0) branches = true;
            }
            if (proceeds && !branches) {
                out.push_back(mk(cls.source_path, method.line_of_declaration,
                                 cls.name + "->" + method.name + method.descriptor,
                                 Severity::Critical));
            }
        }
    }

    for_each_method(ctx.index, [&](const SmaliClass& cls, const SmaliMethod& method) {
        for (const auto& ins : method.instructions) {
            if (ins.raw_text.find("ALLOW_ALL_HOSTNAME_VERIFIER") != std::string::npos) {
                out.push_back(mk(cls.source_path, ins.line, ins.raw_text, Severity::Critical));
            }
        }
    });
    return out;
}

bool weak_transform(std::string_view literal, bool is_cipher) {
    std::string norm = upper(literal);
    // trim surrounding spaces
    auto begin = norm.find_first_not_of(' ');
    auto end = norm.find_last_not_of(' ');
    if (begin == std::string::npos) return false;
    norm = norm.substr(begin, end - begin + 1);

    std::string algo = norm.substr(0, norm.find('/'));
    static const std::set<std::string> weak_algos = {"MD5", "SHA1", "SHA-1", "DES", "RC4"};
    if (weak_algos.count(algo)) return true;
    if (is_cipher) {
        if (norm.find("/ECB/") != std::string::npos) return true;
        if (norm.find('/') == std::string::npos) return true;  // bare name: mode defaults to ECB
    }
    return false;
}

std::vector<Finding> rule_weak_crypto(const RuleContext& ctx) {
    std::vector<Finding> out;
    for_each_method(ctx.index, [&](const SmaliClass& cls, const SmaliMethod& method) {
        for (std::size_t i = 0; i < method.instructions.size(); ++i) {
            const Instruction& ins = method.instructions[i];
            if (!ins.method_ref || ins.method_ref->method_name != "getInstance") continue;
            bool digest = ins.method_ref->class_name == "Ljava/security/MessageDigest;";
            bool cipher = ins.method_ref->class_name == "Ljavax/crypto/Cipher;";
            if (!digest && !cipher) continue;
            auto reg = invoke_arg_register(ins, 0);
            if (!reg) continue;
            auto literal = resolve_const_string(method, i, *reg);
            if (literal && weak_transform(*literal, cipher)) {
                out.push_back(mk(cls.source_path, ins.line, *literal, Severity::Warning));
            }
        }
    });
    return out;
}

std::vector<Finding> rule_exposed_storage(const RuleContext& ctx) {
    static const std::set<std::string> mode_calls = {"openFileOutput", "getSharedPreferences",
                                                     "openOrCreateDatabase"};
    std::vector<Finding> out;
    for_each_method(ctx.index, [&](const SmaliClass& cls, const SmaliMethod& method) {
        for (std::size_t i = 0; i < method.instructions.size(); ++i) {
            const Instruction& ins = method.instructions[i];
            if (!ins.method_ref || !mode_calls.count(ins.method_ref->method_name)) continue;
            auto reg = invoke_arg_register(ins, 1);  // (String name, int mode, ...)
            if (!reg) continue;
            auto mode = resolve_const_int(method, i, *reg);
            if (mode && (*mode == 1 || *mode == 2)) {  // WORLD_READABLE / WORLD_WRITEABLE
                out.push_back(mk(cls.source_path, ins.line, ins.raw_text, Severity::Warning));
            }
        }
    });
    for (const auto& component : ctx.manifest.components) {
        if (component.kind != ComponentKind::Provider) continue;
        if (!effective_exported(component, ctx.manifest.target_sdk)) continue;
        if (component.permission_attr) continue;
        std::string why = component.exported_attr == TriBool::True
                                  ? "android:exported=\"true\""
                                  : (!component.intent_filters.empty()
                                             ? "intent-filter present"
                                             : "default-exported (targetSdk <= 16)");
        out.push_back(mk(component_path(component), 0, why, Severity::Warning));
    }
    return out;
}

std::vector<Finding> rule_unconstrained_icc(const RuleContext& ctx) {
    std::vector<Finding> out;
    for (const auto& component : ctx.manifest.components) {
        if (component.kind == ComponentKind::Provider) continue;
        if (!effective_exported(component, ctx.manifest.target_sdk)) continue;
        if (component.permission_attr) continue;
        std::string why = component.exported_attr == TriBool::True ? "android:exported=\"true\""
                                                                   : "intent-filter present";
        out.push_back(mk(component_path(component), 0, why, Severity::Warning));
    }
    return out;
}

std::vector<Finding> rule_install_permission(const RuleContext& ctx) {
    std::vector<Finding> out;
    static const std::string permission = "android.permission.INSTALL_PACKAGES";
    if (ctx.manifest.uses_permissions.count(permission)) {
        out.push_back(mk("manifest/uses-permission[" + permission + "]", 0, permission,
                         Severity::Warning));
    }
    return out;
}

std::vector<Finding> rule_native_code(const RuleContext& ctx) {
    std::vector<Finding> out;
    for (const auto& lib : ctx.bundle.native_libs) {
        out.push_back(mk(lib, 0, lib, Severity::Info));
    }
    for (const char* method : {"loadLibrary", "load"}) {
        if (const auto* sites = ctx.index.find_invokes("Ljava/lang/System;", method)) {
            for (const auto& site : *sites) {
                out.push_back(mk(site.source_path, site.line, site.text, Severity::Info));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

std::vector<Rule> make_core_rules() {
    std::vector<Rule> rules;

    rules.push_back({"XSS_LIKE_INJECTION", "XSS-like Code Injection", "Lax Input Validation",
                     Severity::Critical,
                     "JavaScript execution is enabled on a WebView (setJavaScriptEnabled with a "
                     "constant true argument) and the app loads web content through loadUrl, "
                     "loadData, or loadDataWithBaseURL.",
                     "Script injected into any channel the app renders runs inside the WebView "
                     "with the app's privileges.",
                     "Disable JavaScript unless it is required, sanitize everything the WebView "
                     "loads, and hand untrusted links to the system browser.",
                     rule_xss_injection});

    rules.push_back({"BROKEN_WEBVIEW_SANDBOX", "Broken WebView's Sandbox", "Lax Input Validation",
                     Severity::Critical,
                     "The code bridges Java objects into WebView JavaScript via "
                     "addJavascriptInterface.",
                     "Injected script can call the exported Java methods and escape the WebView "
                     "sandbox into app and device APIs.",
                     "Avoid the bridge where possible; expose only methods annotated with "
                     "@JavascriptInterface and never render untrusted content with the bridge "
                     "installed.",
                     rule_webview_bridge});

    rules.push_back({"DYNAMIC_CODE_LOADING", "Dynamic Code Loading", "Lax Input Validation",
                     Severity::Warning,
                     "The app loads executable code at runtime: DexClassLoader, "
                     "InMemoryDexClassLoader, URLClassLoader, an explicitly constructed "
                     "PathClassLoader, or createPackageContext.",
                     "When the code source or its storage location is writable by other parties, "
                     "an attacker can substitute the payload and gain code execution.",
                     "Ship code inside the package, or verify the integrity and provenance of "
                     "anything loaded at runtime.",
                     rule_dynamic_loading});

    rules.push_back({"CUSTOM_SCHEME_CHANNEL", "Custom Scheme Channel", "Broken Access Control",
                     Severity::Warning,
                     "An intent filter registers a non-standard URI scheme, or the code calls "
                     "SchemeRegistry.register.",
                     "Any installed app may register the same scheme and intercept messages sent "
                     "through it, including tokens embedded in links.",
                     "Exchange sensitive data through explicit intents instead of custom URI "
                     "schemes.",
                     rule_custom_scheme});

    rules.push_back({"UNIQUE_HARDWARE_ID", "Unique Hardware Identifier", "Sensitive Data Exposure",
                     Severity::Warning,
                     "The code reads a globally unique device identifier: IMEI, subscriber or SIM "
                     "serial, line number, Bluetooth or Wi-Fi MAC address, or the android_id "
                     "settings value.",
                     "Stable hardware identifiers let third parties correlate one user's activity "
                     "across apps and services.",
                     "Use an app-scoped random identifier (UUID.randomUUID()) instead of "
                     "device-bound IDs.",
                     rule_hardware_id});

    rules.push_back({"INSECURE_NETWORK_PROTOCOL", "Insecure Network Protocol",
                     "Sensitive Data Exposure", Severity::Warning,
                     "A string literal hard-codes a cleartext URL (http:// or ftp://).",
                     "Cleartext traffic can be read and altered by anyone on the network path.",
                     "Serve remote content over TLS. Literals that point at loopback hosts or "
                     "packaged assets are reported at info severity only.",
                     rule_insecure_protocol});

    rules.push_back({"HEADER_ATTACHMENT", "Header Attachment", "Sensitive Data Exposure",
                     Severity::Warning,
                     "The code attaches HTTP header fields (addHeader/setHeader on Apache HTTP "
                     "requests, setRequestProperty on HttpURLConnection). Severity is raised to "
                     "critical when a literal in the same method names a credential "
                     "(authorization, cookie, token, password, secret, api key).",
                     "Credentials carried in request headers are exposed to every intermediary "
                     "that can observe the request.",
                     "Authenticate with a dedicated mechanism such as OAuth 2.0 instead of "
                     "hand-built credential headers.",
                     rule_header_attachment});

    rules.push_back({"EXPOSED_CLIPBOARD", "Exposed Clipboard", "Sensitive Data Exposure",
                     Severity::Warning,
                     "The code reads or writes the system clipboard through ClipboardManager.",
                     "The clipboard is shared with every installed app; content placed there can "
                     "be exfiltrated or replaced.",
                     "Keep sensitive values out of the clipboard and validate anything pasted "
                     "from it.",
                     rule_clipboard});

    rules.push_back({"DEBUGGABLE_RELEASE", "Debuggable Release", "Broken Access Control",
                     Severity::Critical,
                     "The manifest sets android:debuggable=\"true\".",
                     "A debuggable app accepts debugger connections; a malicious local process "
                     "can attach, read memory, and execute code with the app's identity.",
                     "Remove the attribute (or set it to false) in signed release builds; recent "
                     "build tooling does this automatically.",
                     rule_debuggable});

    rules.push_back({"IMPROPER_CERT_VALIDATION", "Improper Certificate Validation",
                     "Security Invalidation", Severity::Critical,
                     "A custom X509TrustManager.checkServerTrusted or HostnameVerifier.verify "
                     "performs no validation, an onReceivedSslError override proceeds "
                     "unconditionally, or ALLOW_ALL_HOSTNAME_VERIFIER is used.",
                     "Invalid or attacker-controlled TLS certificates are accepted, so the "
                     "channel is open to man-in-the-middle interception.",
                     "Validate the chain, expiry, and host name; never blanket-accept SSL "
                     "errors.",
                     rule_cert_validation});

    return rules;
}

std::vector<Rule> make_extended_rules() {
    std::vector<Rule> rules;

    rules.push_back({"WEAK_CRYPTO_ALGORITHM", "Weak Crypto Algorithm", "Security Invalidation",
                     Severity::Warning,
                     "MessageDigest.getInstance or Cipher.getInstance is called with a weak "
                     "algorithm (MD5, SHA-1, DES, RC4) or an ECB-mode (or defaulted-mode) "
                     "transformation.",
                     "Weak hashes and ciphers are practically breakable, and ECB leaks plaintext "
                     "structure.",
                     "Use current primitives such as SHA-256 and AES/GCM with an explicit mode "
                     "and padding.",
                     rule_weak_crypto});

    rules.push_back({"EXPOSED_PERSISTENT_DATA", "Exposed Persistent Data",
                     "Sensitive Data Exposure", Severity::Warning,
                     "Files, shared preferences, or databases are opened world-readable or "
                     "world-writable (mode 1 or 2), or a content provider is exported without a "
                     "guarding permission.",
                     "Other apps can read or modify the stored data directly.",
                     "Use private storage modes, guard exported providers with permissions, and "
                     "encrypt sensitive data at rest.",
                     rule_exposed_storage});

    rules.push_back({"UNCONSTRAINED_ICC", "Unconstrained Inter-Component Communication",
                     "Broken Access Control", Severity::Warning,
                     "An activity, service, or receiver is exported (explicitly or through an "
                     "intent filter) without an android:permission requirement.",
                     "Any app can invoke the component, enabling privilege escalation through "
                     "whatever operations it exposes.",
                     "Export only components meant for external use and guard them with custom "
                     "permissions.",
                     rule_unconstrained_icc});

    rules.push_back({"UNACKNOWLEDGED_DISTRIBUTION", "Unacknowledged Distribution",
                     "Security Invalidation", Severity::Warning,
                     "The manifest requests android.permission.INSTALL_PACKAGES.",
                     "Installing packages outside the store bypasses its code and signature "
                     "checks; a compromised update channel can replace whole packages.",
                     "Distribute apps and updates exclusively through stores that perform "
                     "security checks.",
                     rule_install_permission});

    rules.push_back({"NATIVE_CODE", "Native Code", "Insufficient Attack Protection",
                     Severity::Info,
                     "The bundle ships native libraries or loads them at runtime "
                     "(System.loadLibrary / System.load).",
                     "Native code is hard to analyze and prone to memory-corruption bugs that "
                     "can be exploited for code execution.",
                     "Keep the native surface minimal and integrate only trusted, maintained "
                     "libraries.",
                     rule_native_code});

    return rules;
}

}  // namespace

std::string to_string(Severity severity) {
    switch (severity) {
        case Severity::Info: return "info";
        case Severity::Warning: return "warning";
        case Severity::Critical: return "critical";
    }
    return "warning";
}

Severity severity_from_string(const std::string& text) {
    if (text == "info") return Severity::Info;
    if (text == "warning") return Severity::Warning;
    if (text == "critical") return Severity::Critical;
    throw Error("unknown severity '" + text + "'");
}

const std::vector<Rule>& get_ruleset(const std::string& name) {
    static const std::vector<Rule> core = make_core_rules();
    static const std::vector<Rule> extended = make_extended_rules();
    static const std::vector<Rule> all = [] {
        std::vector<Rule> merged = make_core_rules();
        auto ext = make_extended_rules();
        merged.insert(merged.end(), ext.begin(), ext.end());
        return merged;
    }();
    if (name == "core") return core;
    if (name == "extended") return extended;
    if (name == "all") return all;
    throw Error("unknown ruleset '" + name + "' (expected core, extended, or all)");
}

const Rule* find_rule(const std::string& rule_id) {
    for (const auto& rule : get_ruleset("all")) {
        if (rule.id == rule_id) return &rule;
    }
    return nullptr;
}

std::vector<Finding> evaluate_rule(const Rule& rule, const RuleContext& ctx) {
    std::vector<Finding> raw = rule.predicate(ctx);
    std::map<std::pair<std::string, int>, Finding> dedup;
    for (auto& finding : raw) {
        finding.rule_id = rule.id;
        finding.bundle_id = ctx.bundle.bundle_id;
        finding.evidence = truncate_evidence(std::move(finding.evidence));
        dedup.emplace(std::make_pair(finding.path, finding.line), std::move(finding));
    }
    std::vector<Finding> out;
    out.reserve(dedup.size());
    for (auto& [key, finding] : dedup) out.push_back(std::move(finding));
    return out;
}

bool path_excluded(const std::string& path, const std::vector<std::string>& prefixes) {
    if (prefixes.empty()) return false;
    if (path.rfind("manifest/", 0) == 0 || path == "manifest") return false;

    // Match against the path as-is and with the leading smali tree stripped,
    // so "com/thirdparty" covers smali/, smali_classes2/, ...
    std::vector<std::string> candidates = {path};
    auto slash = path.find('/');
    if (slash != std::string::npos && path.rfind("smali", 0) == 0) {
        candidates.push_back(path.substr(slash + 1));
    }
    for (std::string prefix : prefixes) {
        std::replace(prefix.begin(), prefix.end(), '.', '/');
        while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
        if (prefix.empty()) continue;
        for (const auto& candidate : candidates) {
            if (candidate == prefix
                || (candidate.size() > prefix.size() && candidate.rfind(prefix, 0) == 0
                    && candidate[prefix.size()] == '/')) {
                return true;
            }
        }
    }
    return false;
}

Finding severity_adjust(Finding finding) {
    if (finding.rule_id != "INSECURE_NETWORK_PROTOCOL") return finding;
    const std::string& literal = finding.evidence;
    auto scheme_end = literal.find("://");
    if (scheme_end != std::string::npos) {
        auto host_start = scheme_end + 3;
        auto host_end = literal.find_first_of("/:?#", host_start);
        std::string host = lower(literal.substr(
                host_start, host_end == std::string::npos ? std::string::npos
                                                          : host_end - host_start));
        if (host == "127.0.0.1" || host == "localhost" || host == "10.0.2.2") {
            finding.severity = Severity::Info;
            return finding;
        }
    }
    // Cleartext URLs into packaged assets (hybrid frameworks) stay local.
    if (contains_ci(literal, "/android_asset/") || contains_ci(literal, "/android_res/")) {
        finding.severity = Severity::Info;
    }
    return finding;
}

ScanResult evaluate_ruleset(const std::vector<Rule>& ruleset, const RuleContext& ctx,
                            const ScanOptions& options) {
    std::set<std::string> ids;
    for (const auto& rule : ruleset) {
        if (!ids.insert(rule.id).second) {
            throw DuplicateRuleIdError("duplicate rule id '" + rule.id + "'");
        }
    }
    ScanResult result;
    for (const auto& rule : ruleset) {
        std::vector<Finding> findings = evaluate_rule(rule, ctx);
        std::erase_if(findings, [&](const Finding& f) {
            return path_excluded(f.path, options.exclude_prefixes);
        });
        for (auto& finding : findings) {
            result.findings.push_back(severity_adjust(std::move(finding)));
        }
        result.presence[rule.id] = !findings.empty();
    }
    return result;
}

}  // namespace droidsmell
