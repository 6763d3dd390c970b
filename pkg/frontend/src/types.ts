// Wire types of the parse-session service.

export interface FeatureValueView {
  v: number;
  kind: "int" | "real";
}

export interface CaseSlotView {
  case: string;
  select: Record<string, FeatureValueView>;
}

export interface PaletteEntry {
  id: string;
  gloss: string;
  predicative: boolean;
  valency: number;
  intrinsic: Record<string, FeatureValueView>;
  cases: CaseSlotView[];
}

export interface LexiconView {
  ontology_note: string;
  icons: PaletteEntry[];
}

export interface SequenceItem {
  instance_id: number;
  lexicon_id: string;
  gloss: string;
  position: number;
  predicative: boolean;
}

export interface FillView {
  case: string;
  candidate_instance: number;
  candidate: string;
  candidate_position: number;
  raw: number;
  distance: number;
  fading: number;
  value: number;
}

export interface AssignmentView {
  predicate_instance: number;
  predicate: string;
  position: number;
  score: number;
  fills: FillView[];
}

export interface InterpretationView {
  rank: number;
  score: number;
  assignments: AssignmentView[];
}

export interface SessionConfigView {
  gamma: number;
  threshold: number;
  top_k: number | null;
  top_m: number | null;
  strict_fill: boolean;
}

export interface SessionView {
  session_id: string;
  sequence: SequenceItem[];
  interpretations: InterpretationView[];
  config: SessionConfigView;
}
