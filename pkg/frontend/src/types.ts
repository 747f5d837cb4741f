export type PanelTab = "page" | "layout" | "code" | "methods";

export const PANEL_TABS: readonly PanelTab[] = ["page", "layout", "code", "methods"];

export interface FragmentPage {
  name: string;
  page: string;
}

export interface StoryboardNode {
  class_name: string;
  display_name: string;
  page: string;
  layout_code: string;
  activity_code: string;
  method_hierarchy: [string, string][];
  fragment_pages?: FragmentPage[];
}

export interface StoryboardDocument {
  app_id: string;
  nodes: StoryboardNode[];
  edges: [string, string][];
  warnings?: string[];
}

/** Immutable view state: which storyboard is loaded, which activity card is
 *  selected, and which side panel tab is active. */
export interface ViewerState {
  document: StoryboardDocument;
  selected: string | null;
  tab: PanelTab;
}
