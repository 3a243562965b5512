// Small DOM helpers; no framework.

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

// Statement text rendered verbatim in monospace; tabs get a visible marker
// because indentation is part of the canonical bytes.
export function verbatimBlock(text: string): HTMLElement {
  const pre = el("pre", { class: "statement-text" });
  for (const [index, line] of text.split("\n").entries()) {
    if (index > 0) pre.append("\n");
    let rest = line;
    while (rest.startsWith("\t")) {
      pre.append(el("span", { class: "tab-marker" }, "⇥"));
      rest = rest.slice(1);
    }
    pre.append(rest);
  }
  return pre;
}

export function apiAffordance(label: string, url: string): HTMLElement {
  // every displayed aggregate is reproducible with this exact request
  return el(
    "details",
    { class: "api-affordance" },
    el("summary", {}, "view as API"),
    el("code", {}, `GET ${url}`),
    el("p", { class: "hint" }, label),
  );
}

export function errorBox(message: string): HTMLElement {
  return el("div", { class: "error-box" }, message);
}

export function emptyState(message: string): HTMLElement {
  return el("div", { class: "empty-state" }, message);
}
