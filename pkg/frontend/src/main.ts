import { mountViewer } from "./dom";

declare global {
  interface Window {
    __STORYBOARD__?: unknown;
  }
}

function boot(): void {
  const root = document.getElementById("storyboard-root");
  if (!root) {
    return;
  }
  const app = mountViewer(root);
  if (window.__STORYBOARD__ !== undefined) {
    // storyboard_data.js route: works over file:// where fetch is blocked
    app.load(window.__STORYBOARD__);
    return;
  }
  fetch("storyboard.json")
    .then((response) => {
      if (!response.ok) {
        throw new Error(`HTTP ${response.status}`);
      }
      return response.text();
    })
    .then((text) => app.load(text))
    .catch((exc: Error) => app.showError(`could not load storyboard.json: ${exc.message}`));
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", boot);
} else {
  boot();
}
