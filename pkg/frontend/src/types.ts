// Shapes of the /api/v1 JSON bodies this client consumes.

export interface StepInput {
  activity: string;
  participants: string[];
  tool?: string;
  data: string[];
  attrs?: Record<string, string>;
}

export interface TraceStep {
  activity: string;
  context: Record<string, string[]>;
}

export interface CaseView {
  case_id: string;
  external_context: string;
  status: "ongoing" | "completed";
  steps: TraceStep[];
}

export interface ExternalContext {
  id: string;
  attributes: Record<string, string>;
}

export interface DimensionTally {
  matched: number;
  total: number;
}

export interface MatchBreakdown {
  structure_anchor_len: number;
  internal_score: number;
  external_score: number;
  confidence: number;
  per_dimension: Record<string, DimensionTally>;
}

export interface ContinuationTemplate {
  activity: string;
  profile: Record<string, [string, number][]>;
}

export interface RecommendationItem {
  pattern_id: string;
  continuation: ContinuationTemplate[];
  confidence: number;
  justification: string;
  breakdown: MatchBreakdown;
}

export interface RecommendationResponse {
  items: RecommendationItem[];
}

export interface ModelEdge {
  from: string;
  to: string;
  count: number;
}

export interface ModelView {
  nodes: string[];
  edges: ModelEdge[];
  starts: Record<string, number>;
  ends: Record<string, number>;
}

export interface HealthView {
  status: string;
  patterns: number;
  events: number;
}

export interface PatternView {
  id: string;
  context: string;
  support: number;
  successful_support: number;
  templates: ContinuationTemplate[];
}

export interface PreferencesDraft {
  min_support?: number;
  min_length?: number;
  top_k?: number;
  lambda?: number;
  dimensions?: string[];
  success?: { terminal?: string[]; must_contain?: string[]; max_length?: number };
}

export interface ApiErrorBody {
  error: { code: string; message: string; locus?: Record<string, unknown> };
}
